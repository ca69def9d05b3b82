use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, QuiverSchema, VertexId};
use crate::rational::{display_rational, q, Rational};
use crate::rep::{check_relations, is_indecomposable, standard_relations, Indecomposability, Representation};

/// The subcategory of `Q_{m,n}`-representations supported in `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub m: i64,
    pub n: i64,
    pub a: i64,
    pub b: i64,
}

impl WindowSpec {
    pub fn new(m: i64, n: i64, a: i64, b: i64) -> Result<Self> {
        QuiverSchema::qmn(m, n)?;
        if a > b {
            return domain(format!("window [{a}, {b}] is empty"));
        }
        Ok(WindowSpec { m, n, a, b })
    }

    pub fn schema(&self) -> QuiverSchema {
        QuiverSchema::Qmn { m: self.m, n: self.n }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        (self.a..=self.b).map(VertexId::Int).collect()
    }

    pub fn width(&self) -> i64 {
        self.b - self.a
    }

    /// `b - a = |m|`: the long arrow fits inside the window.
    pub fn is_boundary(&self) -> bool {
        self.width() == self.m.abs()
    }

    pub fn contains(&self, x: VertexId) -> bool {
        x.int().is_some_and(|k| self.a <= k && k <= self.b)
    }

    /// Arrows of `Q_{m,n}` with both ends in the window.
    pub fn arrows(&self) -> Vec<ArrowId> {
        let mut out = Vec::new();
        for k in self.a..=self.b {
            for (fam, step) in [(1u8, self.m), (2u8, self.n)] {
                if self.contains(VertexId::Int(k + step)) {
                    out.push(ArrowId::new(fam, VertexId::Int(k)));
                }
            }
        }
        out
    }
}

/// A named benchmark representation with the properties it is expected to have.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    /// Which construction produced the entry.
    pub origin: String,
    pub rep: Arc<Representation>,
    pub expect_indecomposable: Option<bool>,
    pub expect_relations: Option<bool>,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, origin: impl Into<String>, rep: Representation) -> Self {
        CatalogEntry {
            name: name.into(),
            origin: origin.into(),
            rep: Arc::new(rep),
            expect_indecomposable: None,
            expect_relations: None,
        }
    }

    pub fn expecting(mut self, indecomposable: Option<bool>, relations: Option<bool>) -> Self {
        self.expect_indecomposable = indecomposable;
        self.expect_relations = relations;
        self
    }

    /// Recomputes every stored expectation; returns one message per mismatch.
    pub fn verify(&self, seed: u64) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        if let Some(want) = self.expect_relations {
            let viol = check_relations(&self.rep, &standard_relations(&self.rep)?)?;
            if viol.is_empty() != want {
                let witness = viol.first().map(|v| v.generator.label()).unwrap_or_default();
                bad.push(format!("{}: relations expected {want}, got {} {witness}", self.name, viol.is_empty()));
            }
        }
        if let Some(want) = self.expect_indecomposable {
            let got = is_indecomposable(&self.rep, seed)?;
            let ok = match got {
                Indecomposability::Yes => want,
                Indecomposability::No { .. } => !want,
                Indecomposability::Uncertified => false,
            };
            if !ok {
                bad.push(format!("{}: indecomposable expected {want}, got {}", self.name, got.label()));
            }
        }
        Ok(bad)
    }

    /// Verification as a hard error, used when catalogs are built.
    pub fn checked(self, seed: u64) -> Result<Self> {
        let bad = self.verify(seed)?;
        if let Some(first) = bad.first() {
            return domain(format!("catalog entry failed verification: {first}"));
        }
        Ok(self)
    }
}

/// The connected pieces of the window's underlying graph, each walked in
/// order. A piece is a path, or a cycle when the edge count equals the vertex count.
struct Piece {
    vertices: Vec<VertexId>,
    edges: Vec<ArrowId>,
    cycle: bool,
}

fn pieces(spec: &WindowSpec) -> Result<Vec<Piece>> {
    let schema = spec.schema();
    let edges = spec.arrows();
    let mut incident: BTreeMap<VertexId, Vec<usize>> = spec.vertices().into_iter().map(|v| (v, Vec::new())).collect();
    let mut ends = Vec::new();
    for (i, a) in edges.iter().enumerate() {
        let h = schema.head(*a)?;
        incident.get_mut(&a.tail).expect("window vertex").push(i);
        incident.get_mut(&h).expect("window vertex").push(i);
        ends.push((a.tail, h));
    }
    let other = |e: usize, v: VertexId| if ends[e].0 == v { ends[e].1 } else { ends[e].0 };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in spec.vertices() {
        if seen.contains(&start) {
            continue;
        }
        // Collect the component, then walk it from an end (or its least vertex for a cycle).
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in &incident[&v] {
                let w = other(e, v);
                if comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let comp_edges: BTreeSet<usize> = comp.iter().flat_map(|v| incident[v].iter().copied()).collect();
        let cycle = comp_edges.len() == comp.len();
        let first = if cycle {
            *comp.iter().next().expect("nonempty")
        } else {
            *comp.iter().find(|v| incident[v].len() <= 1).expect("a path has an end")
        };
        let mut vertices = vec![first];
        let mut walk_edges = Vec::new();
        let mut used = BTreeSet::new();
        let mut v = first;
        while let Some(&e) = incident[&v].iter().find(|e| !used.contains(*e)) {
            used.insert(e);
            walk_edges.push(edges[e]);
            v = other(e, v);
            if v == first {
                break;
            }
            vertices.push(v);
        }
        out.push(Piece { vertices, edges: walk_edges, cycle });
    }
    Ok(out)
}

fn thin(schema: &QuiverSchema, vertices: &[VertexId], arrows: &[ArrowId]) -> Result<Representation> {
    Representation::new(
        schema,
        vertices.iter().map(|v| (*v, 1)),
        arrows.iter().map(|a| (*a, Matrix::identity(1))),
    )
}

fn interval_name(vertices: &[VertexId]) -> String {
    if vertices.len() == 1 {
        format!("S{}", vertices[0])
    } else {
        let vs: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        format!("I[{}]", vs.join(","))
    }
}

/// Every thin representation supported on a connected sub-path of the window
/// graph, each checked to be indecomposable. On a cycle these are the proper
/// arcs; band modules are not included.
pub fn catalog_interval_modules(spec: &WindowSpec) -> Result<Vec<CatalogEntry>> {
    let schema = spec.schema();
    let mut out = Vec::new();
    for piece in pieces(spec)? {
        let l = piece.vertices.len();
        let mut push = |vs: Vec<VertexId>, es: Vec<ArrowId>| -> Result<()> {
            let e = CatalogEntry::new(interval_name(&vs), "interval", thin(&schema, &vs, &es)?).expecting(Some(true), Some(true));
            out.push(e.checked(0)?);
            Ok(())
        };
        if piece.cycle {
            for s in 0..l {
                for len in 1..=l {
                    let vs = (0..len).map(|t| piece.vertices[(s + t) % l]).collect();
                    let es = (0..len - 1).map(|t| piece.edges[(s + t) % l]).collect();
                    push(vs, es)?;
                }
            }
        } else {
            for i in 0..l {
                for j in i..l {
                    push(piece.vertices[i..=j].to_vec(), piece.edges[i..j].to_vec())?;
                }
            }
        }
    }
    Ok(out)
}

/// The one-parameter family on `Q_{m,1}` over `{0..m}`: chain maps 1, long arrow `lambda`.
pub fn catalog_lambda_family(m: i64, lambdas: &[Rational]) -> Result<Vec<CatalogEntry>> {
    if m < 1 {
        return domain("the lambda family needs m >= 1");
    }
    let spec = WindowSpec::new(m, 1, 0, m)?;
    let schema = spec.schema();
    lambdas
        .iter()
        .map(|l| {
            if l.is_zero() {
                return domain("lambda must be nonzero");
            }
            let mut mats: Vec<(ArrowId, Matrix)> =
                (0..m).map(|k| (ArrowId::new(2, VertexId::Int(k)), Matrix::identity(1))).collect();
            mats.push((ArrowId::new(1, VertexId::Int(0)), Matrix::scalar(1, l)));
            let rep = Representation::new(&schema, (0..=m).map(|k| (VertexId::Int(k), 1)), mats)?;
            CatalogEntry::new(format!("band(m={m}, lambda={})", display_rational(l)), "lambda-family", rep)
                .expecting(Some(true), Some(true))
                .checked(0)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VLambdaVariant {
    /// The diagram exactly as printed; it breaks one commutativity square.
    Printed,
    /// The printed diagram with the map `(1,-1) -> (1,0)` set to `lambda`.
    Repaired,
}

/// The seven-vertex representation of the grid quiver with `Q^2` at `(0,0)`.
pub fn build_v_lambda(lambda: &Rational, variant: VLambdaVariant) -> Result<CatalogEntry> {
    if lambda.is_zero() {
        return domain("lambda must be nonzero");
    }
    let s = QuiverSchema::grid();
    let p = VertexId::Pair;
    let one = Matrix::identity(1);
    let row = |a: Rational, b: Rational| Matrix::from_rows(vec![vec![a, b]], 2);
    let col = |a: i64, b: i64| Matrix::from_i64(2, 1, &[a, b]);
    let corner = match variant {
        VLambdaVariant::Printed => one.clone(),
        VLambdaVariant::Repaired => Matrix::scalar(1, lambda),
    };
    let dims = [
        (p(-1, 0), 1),
        (p(-1, 1), 1),
        (p(0, 1), 1),
        (p(0, 0), 2),
        (p(1, 0), 1),
        (p(0, -1), 1),
        (p(1, -1), 1),
    ];
    let mats = vec![
        (ArrowId::new(1, p(-1, 1)), one.clone()),
        (ArrowId::new(2, p(-1, 0)), one.clone()),
        (ArrowId::new(2, p(0, 0)), row(q(1), q(1))?),
        (ArrowId::new(1, p(-1, 0)), col(1, 0)),
        (ArrowId::new(1, p(0, 0)), row(q(1), lambda.clone())?),
        (ArrowId::new(2, p(0, -1)), col(0, 1)),
        (ArrowId::new(2, p(1, -1)), corner),
        (ArrowId::new(1, p(0, -1)), one),
    ];
    let rep = Representation::new(&s, dims, mats)?;
    let lam = display_rational(lambda);
    Ok(match variant {
        VLambdaVariant::Printed => CatalogEntry::new(format!("V_lambda printed (lambda={lam})"), "v-lambda", rep)
            .expecting(None, Some(false)),
        VLambdaVariant::Repaired => CatalogEntry::new(format!("V_lambda (lambda={lam})"), "v-lambda", rep)
            .expecting(Some(true), Some(true)),
    })
}

/// `Qhat_s` with every forward map `lambda` and every backward map 1.
pub fn cyclic_rep(s: u64, lambda: &Rational) -> Result<Representation> {
    if s == 0 {
        return domain("the cyclic representation needs s > 0");
    }
    let schema = QuiverSchema::qhat(s);
    let mut mats = Vec::new();
    for i in 0..s as i64 {
        mats.push((ArrowId::new(1, VertexId::Int(i)), Matrix::scalar(1, lambda)));
        mats.push((ArrowId::new(2, VertexId::Int(i)), Matrix::identity(1)));
    }
    Representation::new(&schema, (0..s as i64).map(|i| (VertexId::Int(i), 1)), mats)
}

/// `V_0 = V_{m+n} = Q` on `Q_{m,n}` with every arrow zero.
pub fn two_point_rep(m: i64, n: i64) -> Result<Representation> {
    let schema = QuiverSchema::qmn(m, n)?;
    if m + n == 0 {
        return domain("the two vertices coincide when m + n = 0");
    }
    Representation::new(&schema, [(VertexId::Int(0), 1), (VertexId::Int(m + n), 1)], [])
}

/// Window specs accepted by the classifier: `0 <= b - a <= |m|`.
pub fn check_classifiable(spec: &WindowSpec) -> Result<()> {
    if spec.width() > spec.m.abs() {
        return domain(format!("window width {} exceeds |m| = {}", spec.width(), spec.m.abs()));
    }
    if spec.m.gcd(&spec.n) != 1 {
        return domain("gcd(m, n) must be 1");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_catalog_counts() {
        let e = catalog_interval_modules(&WindowSpec::new(3, 2, 0, 2).unwrap()).unwrap();
        let names: Vec<&str> = e.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, vec!["S0", "I[0,2]", "S2", "S1"]);
        assert_eq!(catalog_interval_modules(&WindowSpec::new(3, 2, 4, 4).unwrap()).unwrap().len(), 1);
        // A_4 path 2-0-3-1 in [0,3]: ten intervals.
        assert_eq!(catalog_interval_modules(&WindowSpec::new(3, 2, 0, 3).unwrap()).unwrap().len(), 10);
    }

    #[test]
    fn cycle_catalog() {
        // Triangle 0-1-2 with the long arrow: 3 simples, 3 two-vertex arcs, 3 full arcs.
        let e = catalog_interval_modules(&WindowSpec::new(2, 1, 0, 2).unwrap()).unwrap();
        assert_eq!(e.len(), 9);
        // Kronecker: two simples and two one-arrow strings.
        assert_eq!(catalog_interval_modules(&WindowSpec::new(1, 1, 0, 1).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn lambda_family() {
        let e = catalog_lambda_family(2, &[q(1), q(2)]).unwrap();
        assert_eq!(e.len(), 2);
        assert!(catalog_lambda_family(2, &[q(0)]).is_err());
    }

    #[test]
    fn v_lambda_variants() {
        let printed = build_v_lambda(&q(2), VLambdaVariant::Printed).unwrap();
        assert!(printed.verify(0).unwrap().is_empty());
        let repaired = build_v_lambda(&q(2), VLambdaVariant::Repaired).unwrap();
        assert!(repaired.verify(0).unwrap().is_empty());
        assert_eq!(repaired.rep.total_dim(), 8);
    }

    #[test]
    fn tampered_entry_reports() {
        let mut e = build_v_lambda(&q(2), VLambdaVariant::Printed).unwrap();
        e.expect_relations = Some(true);
        assert_eq!(e.verify(0).unwrap().len(), 1);
    }

    #[test]
    fn cyclic_satisfies_relations() {
        let v = cyclic_rep(5, &q(2)).unwrap();
        assert!(check_relations(&v, &standard_relations(&v).unwrap()).unwrap().is_empty());
    }
}
