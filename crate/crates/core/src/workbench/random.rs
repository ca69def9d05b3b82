//! Seeded generators for test inputs.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::catalog::cyclic_rep;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Path, QuiverSchema, VertexId};
use crate::rational::q;
use crate::rep::{direct_sum_all, hom_basis, RepMorphism, Representation};

/// Matrix with entries in `[-range, range]`, each zero with probability `zero_prob`.
pub fn random_matrix(rows: usize, cols: usize, range: i64, zero_prob: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if !rng.gen_bool(zero_prob) {
                m.set(r, c, q(rng.gen_range(-range..=range)));
            }
        }
    }
    m
}

pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(n, n, 3, 0.2, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random dimensions on `vertices` and random matrices on every arrow between them.
pub fn random_rep(
    schema: &QuiverSchema,
    vertices: &[VertexId],
    max_dim: usize,
    zero_prob: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Representation> {
    let dims: Vec<(VertexId, usize)> = vertices.iter().map(|v| (*v, rng.gen_range(0..=max_dim))).collect();
    let dim_of = |v: VertexId| dims.iter().find(|(x, _)| *x == v).map_or(0, |p| p.1);
    let mut mats = Vec::new();
    for v in vertices {
        for a in schema.arrows_from(*v)? {
            let h = schema.head(a)?;
            if vertices.contains(&h) {
                mats.push((a, random_matrix(dim_of(h), dim_of(*v), 2, zero_prob, rng)));
            }
        }
    }
    Representation::new(schema, dims, mats)
}

/// The same representation in a random basis at every vertex, with the isomorphism.
pub fn random_basis_change(v: &Arc<Representation>, rng: &mut ChaCha8Rng) -> Result<(Arc<Representation>, RepMorphism)> {
    let schema = v.schema();
    let gs: std::collections::BTreeMap<VertexId, Matrix> =
        v.dims().iter().map(|(x, d)| (*x, random_invertible(*d, rng))).collect();
    let mut mats = Vec::new();
    for (a, m) in v.stored_arrows() {
        let h = schema.head(*a)?;
        let inv = gs[&a.tail].inverse().expect("invertible");
        mats.push((*a, &(&gs[&h] * m) * &inv));
    }
    let u = Arc::new(Representation::new(schema, v.dims().iter().map(|(x, d)| (*x, *d)), mats)?);
    let iso = RepMorphism::new(v.clone(), u.clone(), gs)?;
    Ok((u, iso))
}

/// A random element of `Hom(v, u)`, or `None` when that space is zero.
pub fn random_morphism(v: &Arc<Representation>, u: &Arc<Representation>, rng: &mut ChaCha8Rng) -> Result<Option<RepMorphism>> {
    let basis = hom_basis(v, u)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut acc = RepMorphism::zero(v.clone(), u.clone())?;
    for b in &basis {
        acc = acc.add(&b.scale(&q(rng.gen_range(-2..=2))))?;
    }
    Ok(Some(acc))
}

/// A random path of length `len` starting at `tail`.
pub fn random_path(schema: &QuiverSchema, tail: VertexId, len: usize, rng: &mut ChaCha8Rng) -> Result<Path> {
    let mut arrows = Vec::with_capacity(len);
    let mut v = tail;
    for _ in 0..len {
        let out = schema.arrows_from(v)?;
        let a = out[rng.gen_range(0..out.len())];
        v = schema.head(a)?;
        arrows.push(a);
    }
    Path::new(schema, tail, arrows)
}

/// A representation of `Qhat_s` satisfying its preprojective relations: a sum
/// of simples, forward or backward strings and cyclic bands, in a random basis.
pub fn random_cyclic_relation_rep(s: u64, rng: &mut ChaCha8Rng) -> Result<Arc<Representation>> {
    let schema = QuiverSchema::qhat(s);
    let si = s as i64;
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let start = rng.gen_range(0..si);
        let part = match rng.gen_range(0..4) {
            0 => Representation::simple(&schema, VertexId::Int(start))?,
            3 => cyclic_rep(s, &q(rng.gen_range(1..=4)))?,
            kind => {
                let len = rng.gen_range(1..si.max(2)).min(si - 1).max(1);
                let family = if kind == 1 { 1 } else { 2 };
                let step = if family == 1 { 1 } else { -1 };
                let verts: Vec<VertexId> = (0..=len).map(|t| schema.vertex(start + step * t)).collect();
                let arrows: Vec<(ArrowId, Matrix)> =
                    verts[..verts.len() - 1].iter().map(|v| (ArrowId::new(family, *v), Matrix::identity(1))).collect();
                let distinct: std::collections::BTreeSet<VertexId> = verts.iter().copied().collect();
                if distinct.len() != verts.len() {
                    Representation::simple(&schema, VertexId::Int(start))?
                } else {
                    Representation::new(&schema, verts.iter().map(|v| (*v, 1)), arrows)?
                }
            }
        };
        parts.push(part);
    }
    let sum = Arc::new(direct_sum_all(&schema, parts.iter())?);
    Ok(random_basis_change(&sum, rng)?.0)
}
