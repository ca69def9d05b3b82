use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::{catalog_interval_modules, catalog_lambda_family, check_classifiable, CatalogEntry, WindowSpec};
use super::random::random_rep;
use crate::error::Result;
use crate::quiver::VertexId;
use crate::rational::{q, Rational};
use crate::rep::{check_relations, decompose, iso, iso_indecomposable, standard_relations, IsoResult, Representation};

pub const CLASSIFY_SAMPLES: usize = 200;
pub const LAMBDAS: [i64; 5] = [1, 2, 3, 5, 7];

/// Pairwise comparison of the one-parameter family on a boundary window with `n = 1`.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub lambdas: Vec<Rational>,
    pub entries: Vec<CatalogEntry>,
    pub dims: Vec<usize>,
    /// Pairs found isomorphic or undecided; empty when the family is pairwise distinct.
    pub clashes: Vec<(usize, usize, &'static str)>,
}

impl FamilyReport {
    pub fn distinct(&self) -> bool {
        self.clashes.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub spec: WindowSpec,
    pub dim_max: usize,
    pub samples: usize,
    pub catalog: Vec<CatalogEntry>,
    /// How many leaves matched each catalog entry.
    pub hits: Vec<usize>,
    /// Indecomposable leaves outside the catalog, one per iso class.
    pub extra: Vec<Arc<Representation>>,
    /// Leaves whose indecomposability could not be certified.
    pub uncertified: usize,
    pub boundary: bool,
    pub family: Option<FamilyReport>,
}

impl Classification {
    /// Distinct classes seen among the leaves.
    pub fn class_count(&self) -> usize {
        self.hits.iter().filter(|h| **h > 0).count() + self.extra.len()
    }

    /// Every leaf matched a catalog entry. Extra classes are tolerated on
    /// boundary windows, where the graph may close into a cycle.
    pub fn all_matched(&self) -> bool {
        self.uncertified == 0 && (self.extra.is_empty() || self.boundary)
    }
}

/// Decomposes seeded random representations supported in the window and
/// sorts the leaves into the interval catalog.
pub fn window_classify(spec: &WindowSpec, dim_max: usize, seed: u64) -> Result<Classification> {
    window_classify_with(spec, dim_max, seed, CLASSIFY_SAMPLES)
}

pub fn window_classify_with(spec: &WindowSpec, dim_max: usize, seed: u64, samples: usize) -> Result<Classification> {
    check_classifiable(spec)?;
    let schema = spec.schema();
    let vertices = spec.vertices();
    let catalog = catalog_interval_modules(spec)?;
    let mut hits = vec![0; catalog.len()];
    let mut extra: Vec<Arc<Representation>> = Vec::new();
    let mut uncertified = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < samples && attempts < samples * 20 {
        attempts += 1;
        let v = random_rep(&schema, &vertices, dim_max, 0.3, &mut rng)?;
        if !check_relations(&v, &standard_relations(&v)?)?.is_empty() {
            continue;
        }
        drawn += 1;
        let d = decompose(&Arc::new(v), seed.wrapping_add(drawn as u64))?;
        'leaf: for s in d.summands {
            if !s.certified {
                uncertified += 1;
                continue;
            }
            let leaf = s.rep;
            for (i, e) in catalog.iter().enumerate() {
                if e.rep.dims() == leaf.dims() && iso_indecomposable(&leaf, &e.rep)?.is_iso() {
                    hits[i] += 1;
                    continue 'leaf;
                }
            }
            for x in &extra {
                if x.dims() == leaf.dims() && iso_indecomposable(&leaf, x)?.is_iso() {
                    continue 'leaf;
                }
            }
            extra.push(leaf);
        }
    }
    let family = if spec.n == 1 && spec.is_boundary() { Some(lambda_family_report(spec)?) } else { None };
    Ok(Classification { spec: *spec, dim_max, samples: drawn, catalog, hits, extra, uncertified, boundary: spec.is_boundary(), family })
}

fn lambda_family_report(spec: &WindowSpec) -> Result<FamilyReport> {
    let lambdas: Vec<Rational> = LAMBDAS.iter().map(|l| q(*l)).collect();
    let shift = spec.a;
    let entries: Vec<CatalogEntry> = catalog_lambda_family(spec.m, &lambdas)?
        .into_iter()
        .map(|e| {
            let rep = e.rep.relabel(e.rep.schema(), |x| match x {
                VertexId::Int(k) => VertexId::Int(k + shift),
                other => other,
            })?;
            Ok(CatalogEntry { rep: Arc::new(rep), ..e })
        })
        .collect::<Result<_>>()?;
    let mut clashes = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            match iso(&entries[i].rep, &entries[j].rep, 0)? {
                IsoResult::NotIso => {}
                IsoResult::Iso(_) => clashes.push((i, j, "iso")),
                IsoResult::Unknown => clashes.push((i, j, "unknown")),
            }
        }
    }
    let dims = entries[0].rep.dims().values().copied().collect();
    Ok(FamilyReport { lambdas, entries, dims, clashes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_window() {
        let c = window_classify_with(&WindowSpec::new(3, 2, 0, 2).unwrap(), 3, 1, 40).unwrap();
        assert!(c.all_matched());
        assert_eq!(c.class_count(), 4);
        assert!(c.family.is_none());
    }

    #[test]
    fn one_vertex_window() {
        let c = window_classify_with(&WindowSpec::new(3, 2, 5, 5).unwrap(), 2, 0, 10).unwrap();
        assert_eq!(c.class_count(), 1);
    }

    #[test]
    fn tame_window_family() {
        let c = window_classify_with(&WindowSpec::new(2, 1, 0, 2).unwrap(), 1, 0, 10).unwrap();
        let f = c.family.unwrap();
        assert!(f.distinct());
        assert_eq!(f.dims, vec![1, 1, 1]);
        assert!(c.boundary);
    }

    #[test]
    fn too_wide() {
        assert!(window_classify(&WindowSpec::new(3, 2, 0, 4).unwrap(), 2, 0).is_err());
    }
}
