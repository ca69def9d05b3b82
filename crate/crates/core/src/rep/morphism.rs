use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::representation::Representation;
use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::quiver::VertexId;
use crate::rational::Rational;

/// A morphism of representations: one matrix per vertex of the common support.
///
/// Components live on `supp(source) ∩ supp(target)`; elsewhere the component
/// is a map from or to the zero space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Arc<Representation>,
    target: Arc<Representation>,
    comps: BTreeMap<VertexId, Matrix>,
}

fn common_support(v: &Representation, u: &Representation) -> Vec<VertexId> {
    v.dims().keys().filter(|x| u.dim(**x) > 0).copied().collect()
}

impl RepMorphism {
    /// Validates shapes and the intertwining equations at every arrow touching either support.
    pub fn new(
        source: Arc<Representation>,
        target: Arc<Representation>,
        comps: impl IntoIterator<Item = (VertexId, Matrix)>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, comps)?;
        if let Some(msg) = m.intertwining_defect()? {
            return domain(format!("not a morphism of representations: {msg}"));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<Representation>,
        target: Arc<Representation>,
        comps: impl IntoIterator<Item = (VertexId, Matrix)>,
    ) -> Result<Self> {
        if source.schema() != target.schema() {
            return domain("morphism between representations on different schemas");
        }
        let mut c = BTreeMap::new();
        for x in common_support(&source, &target) {
            c.insert(x, Matrix::zeros(target.dim(x), source.dim(x)));
        }
        for (x, mat) in comps {
            let expect = (target.dim(x), source.dim(x));
            if mat.shape() != expect {
                return Err(Error::Shape(format!("component at {x} must be {}x{}", expect.0, expect.1)));
            }
            if expect.0 > 0 && expect.1 > 0 {
                c.insert(x, mat);
            }
        }
        Ok(RepMorphism { source, target, comps: c })
    }

    pub fn identity(v: Arc<Representation>) -> Self {
        let comps: Vec<_> = v.dims().iter().map(|(x, d)| (*x, Matrix::identity(*d))).collect();
        Self::new_unchecked(v.clone(), v, comps).expect("identity shapes")
    }

    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Result<Self> {
        Self::new_unchecked(source, target, [])
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn comps(&self) -> &BTreeMap<VertexId, Matrix> {
        &self.comps
    }

    pub fn comp(&self, x: VertexId) -> Matrix {
        self.comps
            .get(&x)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(x), self.source.dim(x)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Matrix::is_zero)
    }

    /// `None` when `U(a) h_t = h_h V(a)` holds at every arrow touching either support.
    pub fn intertwining_defect(&self) -> Result<Option<String>> {
        let schema = self.source.schema();
        let mut arrows = self.source.arrows_touching_support()?;
        arrows.extend(self.target.arrows_touching_support()?);
        arrows.sort();
        arrows.dedup();
        for a in arrows {
            let h = schema.head(a)?;
            let lhs = &self.target.mat(a)? * &self.comp(a.tail);
            let rhs = &self.comp(h) * &self.source.mat(a)?;
            if lhs != rhs {
                return Ok(Some(format!("square at {} does not commute", schema.arrow_label(a))));
            }
        }
        Ok(None)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> Result<RepMorphism> {
        if first.target != self.source && *first.target != *self.source {
            return domain("composing morphisms whose ends do not match");
        }
        let comps: Vec<_> = common_support(&first.source, &self.target)
            .into_iter()
            .map(|x| (x, &self.comp(x) * &first.comp(x)))
            .collect();
        Self::new_unchecked(first.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if *self.source != *other.source || *self.target != *other.target {
            return domain("adding morphisms with different ends");
        }
        let comps: Vec<_> = self.comps.keys().map(|x| (*x, &self.comp(*x) + &other.comp(*x))).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, c: &Rational) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(x, m)| (*x, m.scale(c))).collect(),
        }
    }

    /// `self^e` for an endomorphism.
    pub fn pow(&self, e: usize) -> Result<RepMorphism> {
        if *self.source != *self.target {
            return domain("power of a non-endomorphism");
        }
        Ok(RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(x, m)| (*x, m.pow(e))).collect(),
        })
    }

    /// Whether every component is invertible (and the two supports agree).
    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims() && self.comps.values().all(Matrix::is_invertible)
    }

    /// Components concatenated in vertex order, row-major.
    pub fn flatten(&self) -> Vec<Rational> {
        self.comps.values().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub(crate) fn from_flat(source: Arc<Representation>, target: Arc<Representation>, flat: &[Rational]) -> Result<Self> {
        let mut comps = Vec::new();
        let mut off = 0;
        for x in common_support(&source, &target) {
            let (r, c) = (target.dim(x), source.dim(x));
            comps.push((x, Matrix::from_vec(r, c, flat[off..off + r * c].to_vec())?));
            off += r * c;
        }
        if off != flat.len() {
            return Err(Error::Shape("flat morphism has the wrong length".into()));
        }
        Self::new_unchecked(source, target, comps)
    }

    pub fn flat_len(source: &Representation, target: &Representation) -> usize {
        common_support(source, target).iter().map(|x| source.dim(*x) * target.dim(*x)).sum()
    }
}

/// Basis of `Hom(V, U)`: the solution space of the intertwining equations.
pub fn hom_basis(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<Vec<RepMorphism>> {
    if v.schema() != u.schema() {
        return domain("Hom between representations on different schemas");
    }
    let schema = v.schema();
    let mut offsets = BTreeMap::new();
    let mut nvars = 0;
    for x in common_support(v, u) {
        offsets.insert(x, nvars);
        nvars += u.dim(x) * v.dim(x);
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let mut arrows = v.arrows_touching_support()?;
    arrows.extend(u.arrows_touching_support()?);
    arrows.sort();
    arrows.dedup();

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in arrows {
        let (x, y) = (a.tail, schema.head(a)?);
        let (va, ua) = (v.mat(a)?, u.mat(a)?);
        let (dvx, duy) = (v.dim(x), u.dim(y));
        // U(a) h_x - h_y V(a) = 0, one equation per entry (r, c) of a duy x dvx matrix.
        for r in 0..duy {
            for c in 0..dvx {
                let mut row = vec![Rational::zero(); nvars];
                if let Some(&ox) = offsets.get(&x) {
                    for k in 0..u.dim(x) {
                        let coef = ua.get(r, k);
                        if !coef.is_zero() {
                            row[ox + k * dvx + c] += coef;
                        }
                    }
                }
                if let Some(&oy) = offsets.get(&y) {
                    let dvy = v.dim(y);
                    for k in 0..dvy {
                        let coef = va.get(k, c);
                        if !coef.is_zero() {
                            row[oy + r * dvy + k] -= coef;
                        }
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(rows, nvars)?;
    let kernel = system.kernel();
    let mut out = Vec::with_capacity(kernel.cols());
    for j in 0..kernel.cols() {
        let flat: Vec<Rational> = (0..nvars).map(|i| kernel.get(i, j).clone()).collect();
        out.push(RepMorphism::from_flat(v.clone(), u.clone(), &flat)?);
    }
    Ok(out)
}

pub fn hom_dim(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<usize> {
    Ok(hom_basis(v, u)?.len())
}

/// The subrepresentation spanned by the columns of `bases[x]` at each vertex,
/// with its inclusion. The spans must be invariant under every arrow.
pub fn subrepresentation(
    v: &Arc<Representation>,
    bases: &BTreeMap<VertexId, Matrix>,
) -> Result<(Representation, RepMorphism)> {
    let schema = v.schema();
    let basis_at = |x: VertexId| bases.get(&x).cloned().unwrap_or_else(|| Matrix::zeros(v.dim(x), 0));
    let dims: Vec<_> = bases.iter().map(|(x, b)| (*x, b.cols())).collect();
    let mut mats = Vec::new();
    for (a, m) in v.stored_arrows() {
        let h = schema.head(*a)?;
        let (bt, bh) = (basis_at(a.tail), basis_at(h));
        if bt.cols() == 0 || bh.cols() == 0 {
            continue;
        }
        let image = m * &bt;
        let induced = bh
            .solve(&image)?
            .ok_or_else(|| Error::Domain(format!("span is not invariant under {}", schema.arrow_label(*a))))?;
        mats.push((*a, induced));
    }
    let sub = Representation::new(schema, dims, mats)?;
    // Arrows into vertices where the span is zero must kill the span.
    for (a, m) in v.stored_arrows() {
        let h = schema.head(*a)?;
        if basis_at(h).cols() == 0 && !(m * &basis_at(a.tail)).is_zero() {
            return domain(format!("span is not invariant under {}", schema.arrow_label(*a)));
        }
    }
    let sub = Arc::new(sub);
    let incl = RepMorphism::new_unchecked(sub.clone(), v.clone(), bases.iter().map(|(x, b)| (*x, b.clone())))?;
    Ok((Arc::try_unwrap(sub).unwrap_or_else(|a| (*a).clone()), incl))
}

/// Pointwise kernel of `sigma` with its inclusion into the source.
pub fn kernel_rep(sigma: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let v = sigma.source();
    let bases: BTreeMap<_, _> = v
        .dims()
        .keys()
        .map(|x| (*x, sigma.comp(*x).kernel()))
        .filter(|(_, b)| b.cols() > 0)
        .collect();
    subrepresentation(v, &bases)
}

/// Pointwise cokernel of `sigma` with the projection from the target.
pub fn cokernel_rep(sigma: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let u = sigma.target();
    let schema = u.schema();
    // Rows of proj[x] span the annihilator of im sigma_x.
    let proj: BTreeMap<VertexId, Matrix> = u
        .dims()
        .keys()
        .map(|x| (*x, sigma.comp(*x).left_kernel()))
        .filter(|(_, p)| p.rows() > 0)
        .collect();
    let proj_at = |x: VertexId| proj.get(&x).cloned().unwrap_or_else(|| Matrix::zeros(0, u.dim(x)));
    let mut mats = Vec::new();
    for (a, m) in u.stored_arrows() {
        let h = schema.head(*a)?;
        let (pt, ph) = (proj_at(a.tail), proj_at(h));
        if pt.rows() == 0 || ph.rows() == 0 {
            continue;
        }
        let right = pt.right_inverse().ok_or_else(|| Error::Domain("projection without right inverse".into()))?;
        mats.push((*a, &(&ph * m) * &right));
    }
    let quotient = Arc::new(Representation::new(schema, proj.iter().map(|(x, p)| (*x, p.rows())), mats)?);
    let projection = RepMorphism::new_unchecked(u.clone(), quotient.clone(), proj.clone())?;
    Ok(((*quotient).clone(), projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{ArrowId, QuiverSchema};

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    /// Thin interval on the chain `lo -> lo+1 -> ... -> hi` of `schema`, all maps 1.
    fn interval(schema: &QuiverSchema, lo: i64, hi: i64) -> Arc<Representation> {
        Arc::new(
            Representation::new(
                schema,
                (lo..=hi).map(|k| (int(k), 1)),
                (lo..hi).map(|k| (ArrowId::new(1, int(k)), Matrix::identity(1))),
            )
            .unwrap(),
        )
    }

    #[test]
    fn two_point_end_dim_two() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let v = Arc::new(Representation::new(&s, [(int(0), 1), (int(5), 1)], []).unwrap());
        assert_eq!(hom_dim(&v, &v).unwrap(), 2);
    }

    #[test]
    fn no_hom_between_disconnected_simples() {
        let s = QuiverSchema::a_window(0, 2, vec![2]).unwrap();
        let s0 = Arc::new(Representation::simple(&s, int(0)).unwrap());
        let s1 = Arc::new(Representation::simple(&s, int(1)).unwrap());
        assert_eq!(hom_dim(&s0, &s1).unwrap(), 0);
    }

    #[test]
    fn hom_respects_boundary_arrows() {
        // On 0 -> 1, S_1 embeds into I[0,1] but S_0 does not.
        let s = QuiverSchema::a_window(0, 1, vec![1]).unwrap();
        let i01 = interval(&s, 0, 1);
        let s0 = Arc::new(Representation::simple(&s, int(0)).unwrap());
        let s1 = Arc::new(Representation::simple(&s, int(1)).unwrap());
        assert_eq!(hom_dim(&s0, &i01).unwrap(), 0);
        assert_eq!(hom_dim(&s1, &i01).unwrap(), 1);
        assert_eq!(hom_dim(&i01, &s0).unwrap(), 1);
        assert_eq!(hom_dim(&i01, &i01).unwrap(), 1);
        for h in hom_basis(&i01, &s0).unwrap() {
            assert_eq!(h.intertwining_defect().unwrap(), None);
        }
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let s = QuiverSchema::a_window(0, 2, vec![1]).unwrap();
        let v = interval(&s, 0, 2);
        let (k, _) = kernel_rep(&RepMorphism::identity(v.clone())).unwrap();
        assert!(k.is_zero());
        let (k, incl) = kernel_rep(&RepMorphism::zero(v.clone(), v.clone()).unwrap()).unwrap();
        assert_eq!(k, *v);
        assert_eq!(incl.intertwining_defect().unwrap(), None);
    }

    #[test]
    fn cokernel_of_simple_into_interval() {
        // Chain 2 -> 1 -> 0: vertex 0 is a sink, so S_0 is a subrepresentation of I[0,2].
        let s = QuiverSchema::a_window(0, 2, vec![-1]).unwrap();
        let i02 = Arc::new(
            Representation::new(
                &s,
                (0..=2).map(|k| (int(k), 1)),
                (1..=2).map(|k| (ArrowId::new(1, int(k)), Matrix::identity(1))),
            )
            .unwrap(),
        );
        let s0 = Arc::new(Representation::simple(&s, int(0)).unwrap());
        let incl = RepMorphism::new(s0, i02, [(int(0), Matrix::identity(1))]).unwrap();
        let (c, proj) = cokernel_rep(&incl).unwrap();
        assert_eq!(c.dim(int(0)), 0);
        assert_eq!(c.dim(int(1)), 1);
        assert_eq!(c.dim(int(2)), 1);
        assert!(!c.mat(ArrowId::new(1, int(2))).unwrap().is_zero());
        assert_eq!(proj.intertwining_defect().unwrap(), None);
        assert!(proj.after(&incl).unwrap().is_zero());
    }

    #[test]
    fn non_intertwining_rejected() {
        let s = QuiverSchema::a_window(0, 1, vec![1]).unwrap();
        let i01 = interval(&s, 0, 1);
        let bad = RepMorphism::new(i01.clone(), i01, [(int(0), Matrix::identity(1))]);
        assert!(bad.is_err());
    }
}
