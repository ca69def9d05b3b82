use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{domain, Error, Result};
use crate::quiver::{ArrowId, Path, QuiverSchema, VertexId, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    /// `(i,j) -> i-j` onto the line quiver.
    F,
    /// `k -> j_k` with `k = j_k m (mod s)`; `minv` is `m^{-1} mod s` (or `m` when `s = 0`).
    G { m: i64, n: i64, s: i64, minv: i64 },
    Table { vertices: BTreeMap<VertexId, VertexId>, arrows: BTreeMap<ArrowId, ArrowId> },
}

/// A morphism of quivers, given by closed-form rules or by finite tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverMorphism {
    source: QuiverSchema,
    target: QuiverSchema,
    rule: Rule,
}

/// `Q_{inf x inf} -> Q_inf`, `(i,j) -> i-j`.
pub fn morphism_f() -> QuiverMorphism {
    QuiverMorphism { source: QuiverSchema::grid(), target: QuiverSchema::qinf(), rule: Rule::F }
}

/// `Q_{m,n} -> Qhat_{|m+n|}`.
pub fn morphism_g(m: i64, n: i64) -> Result<QuiverMorphism> {
    let source = QuiverSchema::qmn(m, n)?;
    let s = (m + n).abs();
    let minv = if s == 0 {
        m
    } else {
        let e = m.extended_gcd(&s);
        debug_assert_eq!(e.gcd, 1);
        e.x.rem_euclid(s)
    };
    Ok(QuiverMorphism { source, target: QuiverSchema::qhat(s as u64), rule: Rule::G { m, n, s, minv } })
}

impl QuiverMorphism {
    /// A morphism between finite schemas given by complete vertex and arrow tables.
    pub fn table(
        source: QuiverSchema,
        target: QuiverSchema,
        vertices: impl IntoIterator<Item = (VertexId, VertexId)>,
        arrows: impl IntoIterator<Item = (ArrowId, ArrowId)>,
    ) -> Result<Self> {
        let vertices: BTreeMap<_, _> = vertices.into_iter().collect();
        let arrows: BTreeMap<_, _> = arrows.into_iter().collect();
        let phi = QuiverMorphism { source, target, rule: Rule::Table { vertices, arrows } };
        let all = Window::Full.vertices(&phi.source)?;
        for x in &all {
            phi.map_vertex(*x)?;
        }
        if let Some(msg) = phi.morphism_defect(&all)? {
            return domain(msg);
        }
        Ok(phi)
    }

    pub fn source(&self) -> &QuiverSchema {
        &self.source
    }

    pub fn target(&self) -> &QuiverSchema {
        &self.target
    }

    pub fn kind(&self) -> &'static str {
        match self.rule {
            Rule::F => "f",
            Rule::G { .. } => "g",
            Rule::Table { .. } => "table",
        }
    }

    /// `(m, n)` for `g`.
    pub fn g_params(&self) -> Option<(i64, i64)> {
        match self.rule {
            Rule::G { m, n, .. } => Some((m, n)),
            _ => None,
        }
    }

    pub fn table_entries(&self) -> Option<(&BTreeMap<VertexId, VertexId>, &BTreeMap<ArrowId, ArrowId>)> {
        match &self.rule {
            Rule::Table { vertices, arrows } => Some((vertices, arrows)),
            _ => None,
        }
    }

    pub fn map_vertex(&self, x: VertexId) -> Result<VertexId> {
        self.source.check_vertex(x)?;
        match (&self.rule, x) {
            (Rule::F, VertexId::Pair(i, j)) => Ok(VertexId::Int(i - j)),
            (Rule::G { s, minv, .. }, VertexId::Int(k)) => {
                Ok(if *s == 0 { VertexId::Int(k * minv) } else { VertexId::Int((k * minv).rem_euclid(*s)) })
            }
            (Rule::Table { vertices, .. }, _) => {
                vertices.get(&x).copied().ok_or_else(|| Error::Domain(format!("vertex {x} is missing from the table")))
            }
            _ => domain(format!("vertex {x} is not in {}", self.source)),
        }
    }

    pub fn map_arrow(&self, a: ArrowId) -> Result<ArrowId> {
        self.source.check_arrow(a)?;
        match &self.rule {
            Rule::F | Rule::G { .. } => Ok(ArrowId::new(a.family, self.map_vertex(a.tail)?)),
            Rule::Table { arrows, .. } => arrows.get(&a).copied().ok_or_else(|| {
                Error::Domain(format!("arrow {} is missing from the table", self.source.arrow_label(a)))
            }),
        }
    }

    pub fn map_path(&self, p: &Path) -> Result<Path> {
        p.validate(&self.source)?;
        let arrows = p.arrows().iter().map(|a| self.map_arrow(*a)).collect::<Result<Vec<_>>>()?;
        Path::new(&self.target, self.map_vertex(p.tail())?, arrows)
    }

    /// First arrow starting in `vertices` where tails or heads are not respected.
    pub fn morphism_defect(&self, vertices: &[VertexId]) -> Result<Option<String>> {
        for x in vertices {
            for a in self.source.arrows_from(*x)? {
                let b = self.map_arrow(a)?;
                if !self.target.is_valid_arrow(b) {
                    return Ok(Some(format!("{} maps to a non-arrow", self.source.arrow_label(a))));
                }
                if b.tail != self.map_vertex(a.tail)? || self.target.head(b)? != self.map_vertex(self.source.head(a)?)? {
                    return Ok(Some(format!(
                        "{} is sent to {}, which has the wrong ends",
                        self.source.arrow_label(a),
                        self.target.arrow_label(b)
                    )));
                }
            }
        }
        Ok(None)
    }

    /// The unique arrow with head `y` mapping to `b`.
    pub fn lift_arrow(&self, b: ArrowId, y: VertexId) -> Result<ArrowId> {
        let mut found = None;
        for a in self.source.arrows_into(y)? {
            if self.map_arrow(a)? == b {
                if found.is_some() {
                    return domain(format!("{} has two lifts into {y}", self.target.arrow_label(b)));
                }
                found = Some(a);
            }
        }
        found.ok_or_else(|| Error::Domain(format!("{} has no lift into {y}", self.target.arrow_label(b))))
    }
}

/// Outcome of a covering check; the witness names the first failing vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Covering {
    Yes,
    No { vertex: VertexId, reason: String },
}

impl Covering {
    pub fn is_yes(&self) -> bool {
        matches!(self, Covering::Yes)
    }
}

/// Checks at every window vertex that `phi` is a morphism there and maps the
/// in-arrows bijectively onto the in-arrows of the image. By induction on
/// length this gives unique lifting of paths ending in the window.
pub fn is_covering(phi: &QuiverMorphism, window: &[VertexId]) -> Result<Covering> {
    for x in window {
        if let Some(reason) = phi.morphism_defect(std::slice::from_ref(x))? {
            return Ok(Covering::No { vertex: *x, reason });
        }
        let mut here = phi.source.arrows_into(*x)?.into_iter().map(|a| phi.map_arrow(a)).collect::<Result<Vec<_>>>()?;
        here.sort();
        let mut there = phi.target.arrows_into(phi.map_vertex(*x)?)?;
        there.sort();
        if here != there {
            let reason = format!(
                "{} in-arrow(s) at {x} against {} at {}",
                here.len(),
                there.len(),
                phi.map_vertex(*x)?
            );
            return Ok(Covering::No { vertex: *x, reason });
        }
    }
    Ok(Covering::Yes)
}

/// The unique path `tau` with head `x` and `phi(tau) = tau2`.
pub fn lift_path(phi: &QuiverMorphism, tau2: &Path, x: VertexId) -> Result<Path> {
    let h = tau2.head(&phi.target)?;
    if phi.map_vertex(x)? != h {
        return domain(format!("{x} maps to {}, not to the head {h} of the path", phi.map_vertex(x)?));
    }
    let mut y = x;
    let mut arrows = Vec::with_capacity(tau2.len());
    for b in tau2.arrows().iter().rev() {
        let a = phi.lift_arrow(*b, y)?;
        y = a.tail;
        arrows.push(a);
    }
    arrows.reverse();
    Path::new(&phi.source, y, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    #[test]
    fn vertex_maps() {
        assert_eq!(morphism_f().map_vertex(VertexId::Pair(2, 5)).unwrap(), int(-3));
        let g = morphism_g(3, 2).unwrap();
        assert_eq!(g.map_vertex(int(1)).unwrap(), int(2));
        assert_eq!(g.map_vertex(int(3)).unwrap(), int(1));
        assert_eq!(g.map_arrow(ArrowId::new(2, int(0))).unwrap(), ArrowId::new(2, int(0)));
        assert!(morphism_g(2, 4).is_err());
    }

    #[test]
    fn g_respects_steps() {
        for (m, n) in [(3, 2), (1, -1), (-1, 1), (5, -3), (2, 1), (1, 1), (-3, 7)] {
            let g = morphism_g(m, n).unwrap();
            let window: Vec<_> = (-12..=12).map(int).collect();
            assert_eq!(g.morphism_defect(&window).unwrap(), None, "({m},{n})");
            assert!(is_covering(&g, &window).unwrap().is_yes(), "({m},{n})");
        }
    }

    #[test]
    fn coverings() {
        let w = Window::Interval(-5, 5).vertices(&QuiverSchema::grid()).unwrap();
        assert!(is_covering(&morphism_f(), &w).unwrap().is_yes());
        let g = morphism_g(3, 2).unwrap();
        let w = Window::Interval(-10, 10).vertices(g.source()).unwrap();
        assert!(is_covering(&g, &w).unwrap().is_yes());
    }

    #[test]
    fn collapse_is_not_covering() {
        let a2 = QuiverSchema::a_window(0, 1, vec![1]).unwrap();
        let lp = QuiverSchema::a_window(0, 0, vec![0]).unwrap();
        let phi = QuiverMorphism::table(
            a2,
            lp,
            [(int(0), int(0)), (int(1), int(0))],
            [(ArrowId::new(1, int(0)), ArrowId::new(1, int(0)))],
        )
        .unwrap();
        match is_covering(&phi, &[int(0), int(1)]).unwrap() {
            Covering::No { vertex, .. } => assert_eq!(vertex, int(0)),
            Covering::Yes => panic!("collapse should not be a covering"),
        }
    }

    #[test]
    fn bad_table_rejected() {
        let a2 = QuiverSchema::a_window(0, 1, vec![1]).unwrap();
        let a2r = QuiverSchema::a_window(0, 1, vec![-1]).unwrap();
        let r = QuiverMorphism::table(
            a2,
            a2r,
            [(int(0), int(0)), (int(1), int(1))],
            [(ArrowId::new(1, int(0)), ArrowId::new(1, int(1)))],
        );
        assert!(r.is_err());
    }

    #[test]
    fn lifts() {
        let g = morphism_g(3, 2).unwrap();
        let qh = g.target().clone();
        let rho0 = Path::arrow(&qh, ArrowId::new(1, int(0))).unwrap();
        let l = lift_path(&g, &rho0, int(3)).unwrap();
        assert_eq!(l, Path::arrow(g.source(), ArrowId::new(1, int(0))).unwrap());
        assert_eq!(lift_path(&g, &Path::trivial(int(0)), int(0)).unwrap(), Path::trivial(int(0)));
        assert!(lift_path(&g, &rho0, int(0)).is_err());

        let f = morphism_f();
        let rb = Path::arrow(f.target(), ArrowId::new(2, int(0))).unwrap();
        let l = lift_path(&f, &rb, VertexId::Pair(0, 1)).unwrap();
        assert_eq!(l, Path::arrow(f.source(), ArrowId::new(2, VertexId::Pair(0, 0))).unwrap());
    }
}
