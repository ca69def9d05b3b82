use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::Zero;

use super::schema::{ArrowId, QuiverSchema, VertexId};
use crate::error::{domain, Result};
use crate::rational::{display_rational, one, Rational};

/// A path stored in application order: `arrows[0]` is applied first.
///
/// The empty arrow list is the trivial path `e_tail`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    tail: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { tail: v, arrows: Vec::new() }
    }

    /// Checks composability at every junction against `schema`.
    pub fn new(schema: &QuiverSchema, tail: VertexId, arrows: Vec<ArrowId>) -> Result<Self> {
        schema.check_vertex(tail)?;
        let mut at = tail;
        for a in &arrows {
            if a.tail != at {
                return domain(format!(
                    "{} does not start at {at}; path is not composable",
                    schema.arrow_label(*a)
                ));
            }
            at = schema.head(*a)?;
        }
        Ok(Path { tail, arrows })
    }

    /// Path from a non-empty arrow list in application order.
    pub fn from_arrows(schema: &QuiverSchema, arrows: Vec<ArrowId>) -> Result<Self> {
        let Some(first) = arrows.first() else {
            return domain("an arrow list must be non-empty; use Path::trivial");
        };
        Path::new(schema, first.tail, arrows)
    }

    pub fn arrow(schema: &QuiverSchema, a: ArrowId) -> Result<Self> {
        Path::from_arrows(schema, vec![a])
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self, schema: &QuiverSchema) -> Result<VertexId> {
        match self.arrows.last() {
            Some(a) => schema.head(*a),
            None => Ok(self.tail),
        }
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn validate(&self, schema: &QuiverSchema) -> Result<()> {
        Path::new(schema, self.tail, self.arrows.clone()).map(|_| ())
    }

    /// Written outermost-first, e.g. `rho2^3 rho1^0`.
    pub fn label(&self, schema: &QuiverSchema) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", self.tail);
        }
        let parts: Vec<String> = self.arrows.iter().rev().map(|a| schema.arrow_label(*a)).collect();
        parts.join(" ")
    }
}

/// `p2 p1` (apply `p1` first), or `None` for the zero path.
pub fn compose(schema: &QuiverSchema, p2: &Path, p1: &Path) -> Result<Option<Path>> {
    p1.validate(schema)?;
    p2.validate(schema)?;
    if p1.head(schema)? != p2.tail {
        return Ok(None);
    }
    let mut arrows = p1.arrows.clone();
    arrows.extend_from_slice(&p2.arrows);
    Ok(Some(Path { tail: p1.tail, arrows }))
}

/// A finite rational combination of paths in one schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSum {
    schema: QuiverSchema,
    terms: BTreeMap<Path, Rational>,
}

impl PathSum {
    pub fn zero(schema: &QuiverSchema) -> Self {
        PathSum { schema: schema.clone(), terms: BTreeMap::new() }
    }

    pub fn from_path(schema: &QuiverSchema, p: Path) -> Result<Self> {
        Self::from_terms(schema, vec![(p, one())])
    }

    pub fn from_terms(schema: &QuiverSchema, terms: impl IntoIterator<Item = (Path, Rational)>) -> Result<Self> {
        let mut s = PathSum::zero(schema);
        for (p, c) in terms {
            p.validate(schema)?;
            s.add_term(p, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn schema(&self) -> &QuiverSchema {
        &self.schema
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_schema(&self, other: &PathSum) -> Result<()> {
        if self.schema != other.schema {
            return domain(format!("path sums live in different schemas ({} vs {})", self.schema, other.schema));
        }
        Ok(())
    }

    pub fn add(&self, other: &PathSum) -> Result<PathSum> {
        self.same_schema(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PathSum) -> Result<PathSum> {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Rational) -> PathSum {
        let mut out = PathSum::zero(&self.schema);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    pub fn label(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            if *c != one() {
                let _ = write!(s, "({}) ", display_rational(c));
            }
            s.push_str(&p.label(&self.schema));
        }
        s
    }
}

/// Product `a * b` in the path algebra: bilinear extension of [`compose`].
pub fn pathsum_mul(a: &PathSum, b: &PathSum) -> Result<PathSum> {
    a.same_schema(b)?;
    let schema = &a.schema;
    let mut out = PathSum::zero(schema);
    for (p2, c2) in &a.terms {
        for (p1, c1) in &b.terms {
            if let Some(p) = compose(schema, p2, p1)? {
                out.add_term(p, c2 * c1);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    fn q32() -> QuiverSchema {
        QuiverSchema::qmn(3, 2).unwrap()
    }

    fn arrow(f: u8, k: i64) -> Path {
        Path::arrow(&q32(), ArrowId::new(f, int(k))).unwrap()
    }

    #[test]
    fn compose_examples() {
        let s = q32();
        let p = compose(&s, &arrow(2, 3), &arrow(1, 0)).unwrap().unwrap();
        assert_eq!(p.tail(), int(0));
        assert_eq!(p.head(&s).unwrap(), int(5));
        assert_eq!(compose(&s, &arrow(1, 1), &arrow(2, 0)).unwrap(), None);
        let e3 = Path::trivial(int(3));
        assert_eq!(compose(&s, &e3, &arrow(1, 0)).unwrap(), Some(arrow(1, 0)));
    }

    #[test]
    fn non_composable_arrow_list_rejected() {
        let s = q32();
        assert!(Path::from_arrows(&s, vec![ArrowId::new(2, int(0)), ArrowId::new(1, int(1))]).is_err());
    }

    #[test]
    fn mul_examples() {
        let s = q32();
        let r10 = PathSum::from_path(&s, arrow(1, 0)).unwrap();
        let e0 = PathSum::from_path(&s, Path::trivial(int(0))).unwrap();
        assert_eq!(pathsum_mul(&r10, &e0).unwrap(), r10);

        let left = PathSum::from_path(&s, arrow(2, 3)).unwrap().add(&PathSum::from_path(&s, arrow(1, 3)).unwrap()).unwrap();
        let prod = pathsum_mul(&left, &r10).unwrap();
        assert_eq!(prod.len(), 2);
        let p1 = compose(&s, &arrow(2, 3), &arrow(1, 0)).unwrap().unwrap();
        let p2 = compose(&s, &arrow(1, 3), &arrow(1, 0)).unwrap().unwrap();
        assert_eq!(prod.coefficient(&p1), q(1));
        assert_eq!(prod.coefficient(&p2), q(1));

        let r11 = PathSum::from_path(&s, arrow(1, 1)).unwrap();
        let r20 = PathSum::from_path(&s, arrow(2, 0)).unwrap();
        assert!(pathsum_mul(&r11, &r20).unwrap().is_zero());
    }

    #[test]
    fn cancellation_drops_terms() {
        let s = q32();
        let a = PathSum::from_path(&s, arrow(1, 0)).unwrap();
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn schema_mismatch_is_error() {
        let a = PathSum::from_path(&q32(), arrow(1, 0)).unwrap();
        let b = PathSum::zero(&QuiverSchema::qmn(2, 1).unwrap());
        assert!(pathsum_mul(&a, &b).is_err());
    }
}
