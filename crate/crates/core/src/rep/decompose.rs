use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::endo::EndAlgebra;
use super::morphism::{hom_basis, kernel_rep, subrepresentation, RepMorphism};
use super::representation::Representation;
use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::poly::rational_eigenvalues;
use crate::quiver::VertexId;
use crate::rational::{q, Rational};

/// Random endomorphisms tried after the basis when looking for a splitting.
const RANDOM_PROBES: usize = 64;
const PROBE_RANGE: i64 = 3;

/// `V = ker h^N (+) im h^N` for an endomorphism `h`, `N = dim V`.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    /// Inclusion of `ker h^N`.
    pub kernel: RepMorphism,
    /// Inclusion of `im h^N`.
    pub image: RepMorphism,
}

/// The Fitting decomposition of `h`, or `None` when one side is zero
/// (that is, `h` is nilpotent or invertible).
pub fn fitting_split(h: &RepMorphism) -> Result<Option<FittingSplit>> {
    let v = h.source();
    if **v != **h.target() {
        return domain("Fitting decomposition needs an endomorphism");
    }
    let p = h.pow(v.total_dim())?;
    let (k, kincl) = kernel_rep(&p)?;
    if k.is_zero() || k.total_dim() == v.total_dim() {
        return Ok(None);
    }
    let bases: BTreeMap<VertexId, Matrix> = v
        .dims()
        .keys()
        .map(|x| (*x, p.comp(*x).image()))
        .filter(|(_, b)| b.cols() > 0)
        .collect();
    let (_, iincl) = subrepresentation(v, &bases)?;
    Ok(Some(FittingSplit { kernel: kincl, image: iincl }))
}

/// One indecomposable candidate inside a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Arc<Representation>,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
    /// `End` of this summand is local, so it is provably indecomposable.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rep: Arc<Representation>,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn is_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certified)
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

fn eigenvalues(h: &RepMorphism) -> Vec<Rational> {
    let mut out: Vec<Rational> = h.comps().values().flat_map(rational_eigenvalues).collect();
    out.sort();
    out.dedup();
    out
}

/// Looks for an endomorphism `x - c` (with `c` a rational eigenvalue of `x`)
/// that is neither nilpotent nor invertible.
fn find_split(end: &EndAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<FittingSplit>> {
    let v = end.rep().clone();
    let id = RepMorphism::identity(v.clone());
    let probe = |x: &RepMorphism| -> Result<Option<FittingSplit>> {
        for c in eigenvalues(x) {
            if let Some(s) = fitting_split(&x.add(&id.scale(&-c))?)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    };
    for b in end.basis() {
        if let Some(s) = probe(b)? {
            return Ok(Some(s));
        }
    }
    for _ in 0..RANDOM_PROBES {
        let coords: Vec<Rational> = (0..end.dim()).map(|_| q(rng.gen_range(-PROBE_RANGE..=PROBE_RANGE))).collect();
        if let Some(s) = probe(&end.element(&coords)?)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn projections(root: &Arc<Representation>, inclusions: &[RepMorphism]) -> Result<Vec<RepMorphism>> {
    let mut comps: Vec<Vec<(VertexId, Matrix)>> = vec![Vec::new(); inclusions.len()];
    for (x, d) in root.dims() {
        let mut b = Matrix::zeros(*d, 0);
        let mut widths = Vec::new();
        for i in inclusions {
            let c = i.comp(*x);
            widths.push(c.cols());
            b = b.hstack(&c)?;
        }
        let inv = b
            .inverse()
            .ok_or_else(|| Error::Domain(format!("summands do not span the space at {x}")))?;
        let mut row = 0;
        for (k, w) in widths.into_iter().enumerate() {
            comps[k].push((*x, inv.submatrix(row, 0, w, *d)));
            row += w;
        }
    }
    inclusions
        .iter()
        .zip(comps)
        .map(|(i, c)| RepMorphism::new_unchecked(root.clone(), i.source().clone(), c))
        .collect()
}

/// Splits `v` by Fitting decompositions of endomorphisms until every piece has
/// a local endomorphism ring or no splitting is found. Deterministic in `seed`.
pub fn decompose(v: &Arc<Representation>, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves: Vec<(RepMorphism, bool)> = Vec::new();
    let mut stack = vec![RepMorphism::identity(v.clone())];
    while let Some(incl) = stack.pop() {
        let piece = incl.source().clone();
        if piece.is_zero() {
            continue;
        }
        let end = EndAlgebra::new(&piece)?;
        if end.is_local() {
            leaves.push((incl, true));
            continue;
        }
        match find_split(&end, &mut rng)? {
            Some(split) => {
                stack.push(incl.after(&split.image)?);
                stack.push(incl.after(&split.kernel)?);
            }
            None => leaves.push((incl, false)),
        }
    }
    leaves.sort_by(|a, b| leaf_key(a.0.source()).cmp(&leaf_key(b.0.source())));
    let incls: Vec<RepMorphism> = leaves.iter().map(|l| l.0.clone()).collect();
    let projs = projections(v, &incls)?;
    let summands = leaves
        .into_iter()
        .zip(projs)
        .map(|((inclusion, certified), projection)| Summand {
            rep: inclusion.source().clone(),
            inclusion,
            projection,
            certified,
        })
        .collect();
    Ok(Decomposition { rep: v.clone(), summands })
}

fn leaf_key(r: &Representation) -> Vec<(VertexId, usize)> {
    r.dims().iter().map(|(x, d)| (*x, *d)).collect()
}

#[derive(Clone, Debug)]
pub enum Indecomposability {
    Yes,
    /// Decomposable; the witness is a nontrivial idempotent when one was found.
    No { witness: Option<RepMorphism> },
    /// `End(V)/J` is bigger than the field and no idempotent was found.
    Uncertified,
}

impl Indecomposability {
    pub fn label(&self) -> &'static str {
        match self {
            Indecomposability::Yes => "yes",
            Indecomposability::No { .. } => "no",
            Indecomposability::Uncertified => "uncertified",
        }
    }
}

/// The zero representation counts as decomposable.
pub fn is_indecomposable(v: &Arc<Representation>, seed: u64) -> Result<Indecomposability> {
    if v.is_zero() {
        return Ok(Indecomposability::No { witness: None });
    }
    let end = EndAlgebra::new(v)?;
    if end.is_local() {
        return Ok(Indecomposability::Yes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match find_split(&end, &mut rng)? {
        Some(split) => {
            let incls = [split.kernel.clone(), split.image.clone()];
            let projs = projections(v, &incls)?;
            Ok(Indecomposability::No { witness: Some(split.image.after(&projs[1])?) })
        }
        None => Ok(Indecomposability::Uncertified),
    }
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    Iso(RepMorphism),
    NotIso,
    /// Some summand could not be certified indecomposable.
    Unknown,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoResult::Iso(_) => "yes",
            IsoResult::NotIso => "no",
            IsoResult::Unknown => "unknown",
        }
    }
}

/// Isomorphism test for two representations with local endomorphism rings:
/// `V ~ U` iff some composite `V -> U -> V` of basis maps lies outside `J(End V)`.
pub fn iso_indecomposable(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<IsoResult> {
    let ev = EndAlgebra::new(v)?;
    if !ev.is_local() || !EndAlgebra::new(u)?.is_local() {
        return domain("iso_indecomposable needs certified indecomposable inputs");
    }
    if v.dims() != u.dims() {
        return Ok(IsoResult::NotIso);
    }
    let there = hom_basis(v, u)?;
    let back = hom_basis(u, v)?;
    for h in &there {
        for g in &back {
            if !ev.in_radical(&g.after(h)?)? {
                // g h is invertible, so h is split mono between indecomposables.
                return Ok(IsoResult::Iso(h.clone()));
            }
        }
    }
    Ok(IsoResult::NotIso)
}

fn random_iso(v: &Arc<Representation>, u: &Arc<Representation>, rng: &mut ChaCha8Rng) -> Result<Option<RepMorphism>> {
    let basis = hom_basis(v, u)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for _ in 0..8 {
        let mut acc = RepMorphism::zero(v.clone(), u.clone())?;
        for b in &basis {
            acc = acc.add(&b.scale(&q(rng.gen_range(-PROBE_RANGE..=PROBE_RANGE))))?;
        }
        if acc.is_iso() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// Isomorphism test for arbitrary finitely supported representations.
///
/// Cheap certificates are tried first: dimension vectors, a random invertible
/// homomorphism, and Hom-dimension invariants. Otherwise both sides are
/// decomposed and their summands matched one by one.
pub fn iso(v: &Arc<Representation>, u: &Arc<Representation>, seed: u64) -> Result<IsoResult> {
    if v.schema() != u.schema() {
        return domain("iso between representations on different schemas");
    }
    if v.dims() != u.dims() {
        return Ok(IsoResult::NotIso);
    }
    if v.is_zero() {
        return Ok(IsoResult::Iso(RepMorphism::identity(v.clone())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(h) = random_iso(v, u, &mut rng)? {
        return Ok(IsoResult::Iso(h));
    }
    let (vv, uv, vu, uu) = (hom_basis(v, v)?.len(), hom_basis(u, v)?.len(), hom_basis(v, u)?.len(), hom_basis(u, u)?.len());
    if vv != uv || vu != uu || vv != uu {
        return Ok(IsoResult::NotIso);
    }
    let dv = decompose(v, seed)?;
    let du = decompose(u, seed.wrapping_add(1))?;
    if !dv.is_certified() || !du.is_certified() {
        return Ok(IsoResult::Unknown);
    }
    if dv.len() != du.len() {
        return Ok(IsoResult::NotIso);
    }
    // Krull-Schmidt: greedy matching of indecomposable summands is exact.
    let mut used = vec![false; du.len()];
    let mut total = RepMorphism::zero(v.clone(), u.clone())?;
    for sv in &dv.summands {
        let mut found = false;
        for (k, su) in du.summands.iter().enumerate() {
            if used[k] {
                continue;
            }
            if let IsoResult::Iso(h) = iso_indecomposable(&sv.rep, &su.rep)? {
                used[k] = true;
                found = true;
                total = total.add(&su.inclusion.after(&h)?.after(&sv.projection)?)?;
                break;
            }
        }
        if !found {
            return Ok(IsoResult::NotIso);
        }
    }
    Ok(IsoResult::Iso(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{ArrowId, QuiverSchema};
    use crate::rep::direct_sum;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    fn chain(lo: i64, hi: i64) -> (QuiverSchema, Representation) {
        let s = QuiverSchema::a_window(0, 3, vec![1]).unwrap();
        let r = Representation::new(
            &s,
            (lo..=hi).map(|k| (int(k), 1)),
            (lo..hi).map(|k| (ArrowId::new(1, int(k)), Matrix::identity(1))),
        )
        .unwrap();
        (s, r)
    }

    #[test]
    fn splits_sum_of_intervals() {
        let (_, a) = chain(0, 2);
        let (_, b) = chain(1, 3);
        let v = Arc::new(direct_sum(&a, &b).unwrap());
        let d = decompose(&v, 7).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.is_certified());
        let dims: Vec<usize> = d.summands.iter().map(|s| s.rep.total_dim()).collect();
        assert_eq!(dims, vec![3, 3]);
        for s in &d.summands {
            assert_eq!(s.inclusion.intertwining_defect().unwrap(), None);
            assert_eq!(s.projection.intertwining_defect().unwrap(), None);
            let id = s.projection.after(&s.inclusion).unwrap();
            assert!(id.comps().values().all(|m| *m == Matrix::identity(m.rows())));
        }
    }

    #[test]
    fn splits_isotypic_sum() {
        let (_, a) = chain(0, 1);
        let v = Arc::new(direct_sum(&direct_sum(&a, &a).unwrap(), &a).unwrap());
        let d = decompose(&v, 1).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.is_certified());
    }

    #[test]
    fn indecomposable_verdicts() {
        let (s, a) = chain(0, 3);
        let a = Arc::new(a);
        assert!(matches!(is_indecomposable(&a, 0).unwrap(), Indecomposability::Yes));
        let z = Arc::new(Representation::zero(&s));
        assert!(matches!(is_indecomposable(&z, 0).unwrap(), Indecomposability::No { witness: None }));
        let v = Arc::new(direct_sum(&a, &Representation::simple(&s, int(1)).unwrap()).unwrap());
        match is_indecomposable(&v, 0).unwrap() {
            Indecomposability::No { witness: Some(e) } => {
                assert_eq!(e.after(&e).unwrap(), e);
                assert_eq!(e.intertwining_defect().unwrap(), None);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn iso_of_reordered_sums() {
        let (_, a) = chain(0, 1);
        let (_, b) = chain(1, 3);
        let ab = Arc::new(direct_sum(&a, &b).unwrap());
        let ba = Arc::new(direct_sum(&b, &a).unwrap());
        match iso(&ab, &ba, 3).unwrap() {
            IsoResult::Iso(h) => {
                assert!(h.is_iso());
                assert_eq!(h.intertwining_defect().unwrap(), None);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn same_dims_not_iso() {
        // I[0,1] + S2 versus S0 + I[1,2]: equal dimension vectors.
        let (s, i01) = chain(0, 1);
        let (_, i12) = chain(1, 2);
        let v = Arc::new(direct_sum(&i01, &Representation::simple(&s, int(2)).unwrap()).unwrap());
        let u = Arc::new(direct_sum(&Representation::simple(&s, int(0)).unwrap(), &i12).unwrap());
        assert!(matches!(iso(&v, &u, 0).unwrap(), IsoResult::NotIso));
    }

    #[test]
    fn iso_indecomposable_requires_local() {
        let (s, a) = chain(0, 1);
        let v = Arc::new(direct_sum(&a, &Representation::simple(&s, int(3)).unwrap()).unwrap());
        assert!(iso_indecomposable(&v, &v).is_err());
    }
}
