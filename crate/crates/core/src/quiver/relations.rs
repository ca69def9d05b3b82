use std::fmt;

use super::path::{Path, PathSum};
use super::schema::{ArrowId, QuiverSchema, VertexId, Window};
use crate::error::{domain, Error, Result};
use crate::rational::{one, Rational};

/// The relation families attached to the quivers of the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    /// Commutativity squares `rho_1^{k+n} rho_2^k - rho_2^{k+m} rho_1^k` on `Q_{m,n}`.
    Rmn,
    /// Preprojective relations `rhobar_{i+1} rho_i - rho_{i-1} rhobar_i` on a cyclic quiver.
    Rhat,
    /// The same relations on the line quiver `Q_inf`.
    Rinf,
    /// Commutativity squares `rho_1^{i,j+1} rho_2^{ij} - rho_2^{i+1,j} rho_1^{ij}` on the grid.
    RinfXinf,
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationFamily::Rmn => "Rmn",
            RelationFamily::Rhat => "Rhat",
            RelationFamily::Rinf => "Rinf",
            RelationFamily::RinfXinf => "RinfXinf",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for RelationFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Rmn" => Ok(RelationFamily::Rmn),
            "Rhat" => Ok(RelationFamily::Rhat),
            "Rinf" => Ok(RelationFamily::Rinf),
            "RinfXinf" => Ok(RelationFamily::RinfXinf),
            _ => Err(Error::Parse(format!("unknown relation family {s:?}"))),
        }
    }
}

/// The natural relation family of a schema, if it has one.
pub fn default_family(schema: &QuiverSchema) -> Option<RelationFamily> {
    match schema {
        QuiverSchema::Qmn { .. } => Some(RelationFamily::Rmn),
        QuiverSchema::QinfXinf => Some(RelationFamily::RinfXinf),
        QuiverSchema::Qhat { s: 0 } => Some(RelationFamily::Rinf),
        QuiverSchema::Qhat { .. } => Some(RelationFamily::Rhat),
        QuiverSchema::Awindow { .. } => None,
    }
}

/// A finite set of relation generators, each a difference of two paths
/// sharing tail and head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub family: Option<RelationFamily>,
    schema: QuiverSchema,
    generators: Vec<PathSum>,
}

impl RelationSet {
    pub fn new(schema: &QuiverSchema, family: Option<RelationFamily>, generators: Vec<PathSum>) -> Result<Self> {
        for g in &generators {
            if g.schema() != schema {
                return domain("relation generator lives in a different schema");
            }
            check_common_ends(g)?;
        }
        Ok(RelationSet { family, schema: schema.clone(), generators })
    }

    pub fn schema(&self) -> &QuiverSchema {
        &self.schema
    }

    pub fn generators(&self) -> &[PathSum] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators scaled so their smallest path has coefficient 1, then sorted.
    /// Two sets agree up to the sign convention of each generator iff these agree.
    pub fn normalized(&self) -> Vec<Vec<(Path, Rational)>> {
        let mut out: Vec<Vec<(Path, Rational)>> = self
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let lead = g.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(one);
                g.terms().map(|(p, c)| (p.clone(), c / &lead)).collect()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Tail and head shared by every term of a relation.
pub fn check_common_ends(g: &PathSum) -> Result<Option<(VertexId, VertexId)>> {
    let schema = g.schema();
    let mut ends = None;
    for (p, _) in g.terms() {
        let e = (p.tail(), p.head(schema)?);
        match ends {
            None => ends = Some(e),
            Some(prev) if prev != e => {
                return domain(format!("relation {} mixes endpoints", g.label()));
            }
            _ => {}
        }
    }
    Ok(ends)
}

fn two_path_relation(schema: &QuiverSchema, plus: Vec<ArrowId>, minus: Vec<ArrowId>) -> Result<PathSum> {
    let a = PathSum::from_path(schema, Path::from_arrows(schema, plus)?)?;
    let b = PathSum::from_path(schema, Path::from_arrows(schema, minus)?)?;
    a.sub(&b)
}

/// All generators of `family` whose tail and head both lie in `window`.
/// Cyclic quivers ignore the window since they are already finite.
pub fn relation_instances(schema: &QuiverSchema, family: RelationFamily, window: &Window) -> Result<RelationSet> {
    let mut gens = Vec::new();
    match (family, schema) {
        (RelationFamily::Rmn, QuiverSchema::Qmn { m, n }) => {
            let verts = window.vertices(schema)?;
            for v in &verts {
                let k = v.int().expect("integer vertex");
                if !verts.contains(&VertexId::Int(k + m + n)) {
                    continue;
                }
                let i = VertexId::Int;
                gens.push(two_path_relation(
                    schema,
                    vec![ArrowId::new(2, i(k)), ArrowId::new(1, i(k + n))],
                    vec![ArrowId::new(1, i(k)), ArrowId::new(2, i(k + m))],
                )?);
            }
        }
        (RelationFamily::Rhat, QuiverSchema::Qhat { s }) if *s > 0 => {
            for i in 0..*s as i64 {
                gens.push(preprojective_generator(schema, i)?);
            }
        }
        (RelationFamily::Rinf, QuiverSchema::Qhat { s: 0 }) => {
            for v in window.vertices(schema)? {
                gens.push(preprojective_generator(schema, v.int().expect("integer vertex"))?);
            }
        }
        (RelationFamily::RinfXinf, QuiverSchema::QinfXinf) => {
            let verts = window.vertices(schema)?;
            for v in &verts {
                let (i, j) = v.pair().expect("pair vertex");
                if !verts.contains(&VertexId::Pair(i + 1, j + 1)) {
                    continue;
                }
                let p = VertexId::Pair;
                gens.push(two_path_relation(
                    schema,
                    vec![ArrowId::new(2, p(i, j)), ArrowId::new(1, p(i, j + 1))],
                    vec![ArrowId::new(1, p(i, j)), ArrowId::new(2, p(i + 1, j))],
                )?);
            }
        }
        _ => return domain(format!("relation family {family} does not apply to {schema}")),
    }
    RelationSet::new(schema, Some(family), gens)
}

/// `rhobar_{i+1} rho_i - rho_{i-1} rhobar_i`, a relation at vertex `i`.
fn preprojective_generator(schema: &QuiverSchema, i: i64) -> Result<PathSum> {
    let v = |k: i64| schema.vertex(k);
    two_path_relation(
        schema,
        vec![ArrowId::new(1, v(i)), ArrowId::new(2, v(i + 1))],
        vec![ArrowId::new(2, v(i)), ArrowId::new(1, v(i - 1))],
    )
}

fn require_qmn(schema: &QuiverSchema) -> Result<(i64, i64)> {
    match schema {
        QuiverSchema::Qmn { m, n } => Ok((*m, *n)),
        other => Err(Error::Unsupported(format!("normal forms are only defined on Q_{{m,n}}, not {other}"))),
    }
}

/// Positions `i` where `arrows[i]` is a `rho_1` immediately followed by a `rho_2`.
pub fn rewrite_sites(path: &Path) -> Vec<usize> {
    let a = path.arrows();
    (0..a.len().saturating_sub(1))
        .filter(|&i| a[i].family == 1 && a[i + 1].family == 2)
        .collect()
}

/// Number of (`rho_1` applied before `rho_2`) pairs; each rewrite lowers it by one.
pub fn inversions(path: &Path) -> usize {
    let mut seen_rho1 = 0;
    let mut count = 0;
    for a in path.arrows() {
        if a.family == 1 {
            seen_rho1 += 1;
        } else {
            count += seen_rho1;
        }
    }
    count
}

/// One application of `rho_2^{k+m} rho_1^k -> rho_1^{k+n} rho_2^k` at `site`.
pub fn rewrite_at(schema: &QuiverSchema, path: &Path, site: usize) -> Result<Path> {
    let (_, n) = require_qmn(schema)?;
    if !rewrite_sites(path).contains(&site) {
        return domain(format!("no rewrite applies at position {site} of {}", path.label(schema)));
    }
    let mut arrows = path.arrows().to_vec();
    let k = arrows[site].tail.int().expect("integer vertex");
    arrows[site] = ArrowId::new(2, VertexId::Int(k));
    arrows[site + 1] = ArrowId::new(1, VertexId::Int(k + n));
    Path::new(schema, path.tail(), arrows)
}

/// Rewrites to the canonical representative modulo the commutativity ideal:
/// every `rho_2` applied before every `rho_1`.
pub fn normal_form_path(schema: &QuiverSchema, path: &Path) -> Result<Path> {
    require_qmn(schema)?;
    path.validate(schema)?;
    let mut cur = path.clone();
    while let Some(&site) = rewrite_sites(&cur).first() {
        cur = rewrite_at(schema, &cur, site)?;
    }
    Ok(cur)
}

pub fn normal_form(a: &PathSum) -> Result<PathSum> {
    let schema = a.schema();
    require_qmn(schema)?;
    let mut terms = Vec::with_capacity(a.len());
    for (p, c) in a.terms() {
        terms.push((normal_form_path(schema, p)?, c.clone()));
    }
    PathSum::from_terms(schema, terms)
}
