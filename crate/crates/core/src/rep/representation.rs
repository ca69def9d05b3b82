use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{
    check_common_ends, default_family, relation_instances, ArrowId, Path, PathSum, QuiverSchema, RelationSet, VertexId, Window,
};

/// A finitely supported representation: a rational vector space per vertex
/// and a matrix per arrow.
///
/// Only vertices of positive dimension are stored, and only arrows whose both
/// endpoints are in the support and whose matrix is nonzero. Everything else
/// is implicitly zero, so structural equality is equality of representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    schema: QuiverSchema,
    dims: BTreeMap<VertexId, usize>,
    mats: BTreeMap<ArrowId, Matrix>,
}

impl Representation {
    pub fn new(
        schema: &QuiverSchema,
        dims: impl IntoIterator<Item = (VertexId, usize)>,
        mats: impl IntoIterator<Item = (ArrowId, Matrix)>,
    ) -> Result<Self> {
        schema.validate()?;
        let mut d = BTreeMap::new();
        for (v, n) in dims {
            schema.check_vertex(v)?;
            if d.insert(v, n).is_some() {
                return domain(format!("vertex {v} listed twice"));
            }
        }
        d.retain(|_, n| *n > 0);
        let mut m = BTreeMap::new();
        for (a, mat) in mats {
            let head = schema.head(a)?;
            let (dt, dh) = (d.get(&a.tail).copied().unwrap_or(0), d.get(&head).copied().unwrap_or(0));
            if mat.shape() != (dh, dt) {
                return Err(Error::Shape(format!(
                    "{} must be {dh}x{dt}, got {}x{}",
                    schema.arrow_label(a),
                    mat.rows(),
                    mat.cols()
                )));
            }
            if m.contains_key(&a) {
                return domain(format!("{} listed twice", schema.arrow_label(a)));
            }
            if !mat.is_zero() {
                m.insert(a, mat);
            }
        }
        Ok(Representation { schema: schema.clone(), dims: d, mats: m })
    }

    pub fn zero(schema: &QuiverSchema) -> Self {
        Representation { schema: schema.clone(), dims: BTreeMap::new(), mats: BTreeMap::new() }
    }

    /// The simple representation at `v`.
    pub fn simple(schema: &QuiverSchema, v: VertexId) -> Result<Self> {
        Representation::new(schema, [(v, 1)], [])
    }

    pub fn schema(&self) -> &QuiverSchema {
        &self.schema
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<VertexId, usize> {
        &self.dims
    }

    pub fn support(&self) -> Vec<VertexId> {
        self.dims.keys().copied().collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Arrows with a nonzero stored matrix.
    pub fn stored_arrows(&self) -> impl Iterator<Item = (&ArrowId, &Matrix)> {
        self.mats.iter()
    }

    /// `V(a)`, with the correct (possibly empty) shape when `a` is not stored.
    pub fn mat(&self, a: ArrowId) -> Result<Matrix> {
        let head = self.schema.head(a)?;
        Ok(match self.mats.get(&a) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(head), self.dim(a.tail)),
        })
    }

    /// `V(tau)` for a path, applying its first arrow first.
    pub fn path_matrix(&self, p: &Path) -> Result<Matrix> {
        p.validate(&self.schema)?;
        let mut acc = Matrix::identity(self.dim(p.tail()));
        for a in p.arrows() {
            acc = &self.mat(*a)? * &acc;
        }
        Ok(acc)
    }

    /// Every arrow with tail or head in the support.
    pub fn arrows_touching_support(&self) -> Result<Vec<ArrowId>> {
        let mut set = BTreeSet::new();
        for v in self.dims.keys() {
            set.extend(self.schema.arrows_from(*v)?);
            set.extend(self.schema.arrows_into(*v)?);
        }
        Ok(set.into_iter().collect())
    }

    /// Support together with every vertex one arrow away from it.
    pub fn support_neighborhood(&self) -> Result<Vec<VertexId>> {
        let mut set = BTreeSet::new();
        for v in self.dims.keys() {
            set.extend(self.schema.neighborhood(*v)?);
        }
        Ok(set.into_iter().collect())
    }

    /// Same data with every vertex and arrow relabelled by `vmap`, used for translations.
    pub(crate) fn relabel(
        &self,
        schema: &QuiverSchema,
        vmap: impl Fn(VertexId) -> VertexId,
    ) -> Result<Representation> {
        Representation::new(
            schema,
            self.dims.iter().map(|(v, d)| (vmap(*v), *d)),
            self.mats.iter().map(|(a, m)| (ArrowId::new(a.family, vmap(a.tail)), m.clone())),
        )
    }

    pub fn summary(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|(v, d)| format!("{v}:{d}")).collect();
        format!("{} dims [{}]", self.schema, dims.join(", "))
    }
}

/// Blockwise direct sum; `v` occupies the first block at every vertex.
pub fn direct_sum(v: &Representation, u: &Representation) -> Result<Representation> {
    if v.schema != u.schema {
        return domain("direct sum of representations on different schemas");
    }
    let mut dims = v.dims.clone();
    for (x, d) in &u.dims {
        *dims.entry(*x).or_insert(0) += d;
    }
    let mut arrows: BTreeSet<ArrowId> = v.mats.keys().copied().collect();
    arrows.extend(u.mats.keys().copied());
    let mut mats = Vec::new();
    for a in arrows {
        mats.push((a, Matrix::block_diag(&[v.mat(a)?, u.mat(a)?])));
    }
    Representation::new(&v.schema, dims, mats)
}

pub fn direct_sum_all<'a>(schema: &QuiverSchema, parts: impl IntoIterator<Item = &'a Representation>) -> Result<Representation> {
    let mut acc = Representation::zero(schema);
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// A relation that a representation fails, with its nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub generator: PathSum,
    pub residual: Matrix,
}

/// Evaluates every generator on `v`; empty output means `v` satisfies `rels`.
pub fn check_relations(v: &Representation, rels: &RelationSet) -> Result<Vec<Violation>> {
    if rels.schema() != v.schema() {
        return domain(format!("relations on {} checked against a representation on {}", rels.schema(), v.schema()));
    }
    let mut out = Vec::new();
    for (index, g) in rels.generators().iter().enumerate() {
        let Some((t, h)) = check_common_ends(g)? else { continue };
        let mut residual = Matrix::zeros(v.dim(h), v.dim(t));
        for (p, c) in g.terms() {
            residual = &residual + &v.path_matrix(p)?.scale(c);
        }
        if !residual.is_zero() {
            out.push(Violation { index, generator: g.clone(), residual });
        }
    }
    Ok(out)
}

/// The schema's own relations over a window wide enough to see every
/// relation touching the support of `v`. Type-A windows carry none.
pub fn standard_relations(v: &Representation) -> Result<RelationSet> {
    let schema = v.schema();
    let Some(family) = default_family(schema) else {
        return RelationSet::new(schema, None, Vec::new());
    };
    let window = match schema {
        QuiverSchema::QinfXinf => {
            let ps: Vec<(i64, i64)> = v.dims.keys().filter_map(|x| x.pair()).collect();
            let i0 = ps.iter().map(|p| p.0).min().unwrap_or(0);
            let i1 = ps.iter().map(|p| p.0).max().unwrap_or(0);
            let j0 = ps.iter().map(|p| p.1).min().unwrap_or(0);
            let j1 = ps.iter().map(|p| p.1).max().unwrap_or(0);
            Window::rect((i0 - 1, i1 + 1), (j0 - 1, j1 + 1))
        }
        QuiverSchema::Qhat { s } if *s > 0 => Window::Full,
        _ => {
            let reach = match schema {
                QuiverSchema::Qmn { m, n } => m.abs() + n.abs(),
                _ => 1,
            };
            let ks: Vec<i64> = v.dims.keys().filter_map(|x| x.int()).collect();
            let lo = ks.iter().copied().min().unwrap_or(0);
            let hi = ks.iter().copied().max().unwrap_or(0);
            Window::Interval(lo - reach, hi + reach)
        }
    };
    relation_instances(schema, family, &window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{relation_instances, RelationFamily, Window};

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    #[test]
    fn shape_checked_on_construction() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let bad = Representation::new(&s, [(int(0), 1), (int(3), 2)], [(ArrowId::new(1, int(0)), Matrix::zeros(1, 1))]);
        assert!(matches!(bad, Err(Error::Shape(_))));
        let good = Representation::new(&s, [(int(0), 1), (int(3), 2)], [(ArrowId::new(1, int(0)), Matrix::from_i64(2, 1, &[1, 0]))]);
        assert!(good.is_ok());
    }

    #[test]
    fn zero_dims_and_zero_maps_are_normalized_away() {
        let s = QuiverSchema::qinf();
        let a = Representation::new(&s, [(int(0), 1), (int(1), 0)], [(ArrowId::new(1, int(0)), Matrix::zeros(0, 1))]).unwrap();
        assert_eq!(a, Representation::simple(&s, int(0)).unwrap());
    }

    #[test]
    fn direct_sum_dims() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let s0 = Representation::simple(&s, int(0)).unwrap();
        let sum = direct_sum(&s0, &s0).unwrap();
        assert_eq!(sum.dim(int(0)), 2);
        assert_eq!(direct_sum(&s0, &Representation::zero(&s)).unwrap(), s0);
    }

    #[test]
    fn cyclic_lambda_rep_satisfies_preprojective_relations() {
        let s = QuiverSchema::qhat(5);
        let lambda = crate::rational::q(2);
        let rep = Representation::new(
            &s,
            (0..5).map(|i| (int(i), 1)),
            (0..5).flat_map(|i| {
                [
                    (ArrowId::new(1, int(i)), Matrix::scalar(1, &lambda)),
                    (ArrowId::new(2, int(i)), Matrix::identity(1)),
                ]
            }),
        )
        .unwrap();
        let r = relation_instances(&s, RelationFamily::Rhat, &Window::Full).unwrap();
        assert!(check_relations(&rep, &r).unwrap().is_empty());
        assert!(check_relations(&Representation::zero(&s), &r).unwrap().is_empty());
    }
}
