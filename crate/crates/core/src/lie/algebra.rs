use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::quiver::{pathsum_mul, relation_instances, ArrowId, Path, PathSum, QuiverSchema, RelationFamily, VertexId, Window};
use crate::rational::{display_rational, q, Rational};

/// Which modified enveloping algebra we multiply in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UMode {
    /// `U_{m,n}`: idempotents `a_k`, `k` an integer.
    Rational { m: i64, n: i64 },
    /// `U_mu` for irrational `mu`: idempotents `a_{ij}`. The tag is carried
    /// for display only and never enters the arithmetic.
    Irrational { mu_tag: Option<String> },
}

impl UMode {
    pub fn rational(m: i64, n: i64) -> Result<Self> {
        QuiverSchema::qmn(m, n)?;
        Ok(UMode::Rational { m, n })
    }

    /// The quiver whose path algebra corresponds to this mode.
    pub fn schema(&self) -> QuiverSchema {
        match self {
            UMode::Rational { m, n } => QuiverSchema::Qmn { m: *m, n: *n },
            UMode::Irrational { .. } => QuiverSchema::QinfXinf,
        }
    }

    fn check_index(&self, k: VertexId) -> Result<()> {
        match (self, k) {
            (UMode::Rational { .. }, VertexId::Int(_)) | (UMode::Irrational { .. }, VertexId::Pair(..)) => Ok(()),
            _ => domain(format!("index {k} does not belong to this algebra")),
        }
    }

    /// `k + r*step1 + s*step2`.
    fn shift(&self, k: VertexId, r: i64, s: i64) -> VertexId {
        match (self, k) {
            (UMode::Rational { m, n }, VertexId::Int(k)) => VertexId::Int(k + r * m + s * n),
            (_, VertexId::Pair(i, j)) => VertexId::Pair(i + r, j + s),
            (_, k) => k,
        }
    }
}

/// `alpha_1^r a_k alpha_2^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UMonomial {
    pub r: u32,
    pub k: VertexId,
    pub s: u32,
}

impl UMonomial {
    pub fn new(r: u32, k: VertexId, s: u32) -> Self {
        UMonomial { r, k, s }
    }

    pub fn idempotent(k: VertexId) -> Self {
        UMonomial { r: 0, k, s: 0 }
    }

    /// Index of the idempotent on the right: `alpha_2^s` enters `a_k` from here.
    pub fn source(&self, mode: &UMode) -> VertexId {
        mode.shift(self.k, 0, -(self.s as i64))
    }

    /// Index of the idempotent on the left.
    pub fn target(&self, mode: &UMode) -> VertexId {
        mode.shift(self.k, self.r as i64, 0)
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.r {
            0 => {}
            1 => parts.push("alpha1".to_string()),
            r => parts.push(format!("alpha1^{r}")),
        }
        parts.push(format!("a_{}", self.k));
        match self.s {
            0 => {}
            1 => parts.push("alpha2".to_string()),
            s => parts.push(format!("alpha2^{s}")),
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite rational combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElement {
    terms: BTreeMap<UMonomial, Rational>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement::default()
    }

    pub fn monomial(m: UMonomial) -> Self {
        UElement::from_terms([(m, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (UMonomial, Rational)>) -> Self {
        let mut e = UElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: UMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UElement {
        UElement::from_terms(self.terms.iter().map(|(m, x)| (*m, x * c)))
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) {m}", display_rational(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn mul_monomials(mode: &UMode, x: &UMonomial, y: &UMonomial) -> Option<UMonomial> {
    if x.source(mode) != y.target(mode) {
        return None;
    }
    let s = x.s + y.s;
    Some(UMonomial { r: x.r + y.r, k: mode.shift(y.source(mode), 0, s as i64), s })
}

/// `x * y` in the modified enveloping algebra (`y` acts first).
pub fn u_mul(mode: &UMode, x: &UElement, y: &UElement) -> Result<UElement> {
    for m in x.terms.keys().chain(y.terms.keys()) {
        mode.check_index(m.k)?;
    }
    let mut out = UElement::zero();
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            if let Some(p) = mul_monomials(mode, mx, my) {
                out.add_term(p, cx * cy);
            }
        }
    }
    Ok(out)
}

fn mode_of(schema: &QuiverSchema) -> Result<UMode> {
    match schema {
        QuiverSchema::Qmn { m, n } => Ok(UMode::Rational { m: *m, n: *n }),
        QuiverSchema::QinfXinf => Ok(UMode::Irrational { mu_tag: None }),
        other => domain(format!("{other} has no associated enveloping algebra")),
    }
}

/// Image of a single path: `r` copies of `alpha_1`, `t` of `alpha_2`, based at the tail.
pub fn phi_path(schema: &QuiverSchema, p: &Path) -> Result<UMonomial> {
    let mode = mode_of(schema)?;
    p.validate(schema)?;
    let r = p.arrows().iter().filter(|a| a.family == 1).count() as u32;
    let t = p.len() as u32 - r;
    Ok(UMonomial { r, k: mode.shift(p.tail(), 0, t as i64), s: t })
}

/// The algebra map from the path algebra to the modified enveloping algebra.
pub fn phi(p: &PathSum) -> Result<UElement> {
    let mut out = UElement::zero();
    for (path, c) in p.terms() {
        out.add_term(phi_path(p.schema(), path)?, c.clone());
    }
    Ok(out)
}

/// The normal-form path of a monomial: `alpha_2` arrows first, then `alpha_1`.
pub fn psi_monomial(mode: &UMode, u: &UMonomial) -> Result<Path> {
    mode.check_index(u.k)?;
    let schema = mode.schema();
    let mut arrows = Vec::new();
    for i in (1..=u.s as i64).rev() {
        arrows.push(ArrowId::new(2, mode.shift(u.k, 0, -i)));
    }
    for i in 0..u.r as i64 {
        arrows.push(ArrowId::new(1, mode.shift(u.k, i, 0)));
    }
    Path::new(&schema, u.source(mode), arrows)
}

pub fn psi(mode: &UMode, u: &UElement) -> Result<PathSum> {
    let schema = mode.schema();
    let terms = u.terms().map(|(m, c)| Ok((psi_monomial(mode, m)?, c.clone()))).collect::<Result<Vec<_>>>()?;
    PathSum::from_terms(&schema, terms)
}

/// Outcome of the bounded round-trip verification.
#[derive(Clone, Debug, Default)]
pub struct RoundtripReport {
    pub paths_checked: usize,
    pub monomials_checked: usize,
    pub products_checked: usize,
    pub relations_checked: usize,
    pub failures: Vec<String>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_path(schema: &QuiverSchema, tail: VertexId, len: usize, rng: &mut ChaCha8Rng) -> Result<Path> {
    let mut arrows = Vec::with_capacity(len);
    let mut v = tail;
    for _ in 0..len {
        let a = ArrowId::new(rng.gen_range(1..=2), v);
        v = schema.head(a)?;
        arrows.push(a);
    }
    Path::new(schema, tail, arrows)
}

fn random_pathsum(schema: &QuiverSchema, window: (i64, i64), degree: usize, rng: &mut ChaCha8Rng) -> Result<PathSum> {
    let mut out = PathSum::zero(schema);
    for _ in 0..rng.gen_range(1..=3) {
        let tail = VertexId::Int(rng.gen_range(window.0..=window.1));
        let p = random_path(schema, tail, rng.gen_range(0..=degree), rng)?;
        let c = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
        out = out.add(&PathSum::from_terms(schema, [(p, q(c))])?)?;
    }
    if out.is_zero() {
        // Cancellation can empty the sum; fall back to a trivial path.
        out = PathSum::from_path(schema, Path::trivial(VertexId::Int(window.0)))?;
    }
    Ok(out)
}

/// Checks `psi . phi = id` on normal-form paths and `phi . psi = id` on
/// monomials of degree at most `degree` based in `window`, that relations map
/// to zero, and that `phi` is multiplicative on `samples` seeded pairs.
pub fn roundtrip_check(m: i64, n: i64, degree: u32, window: (i64, i64), samples: usize, seed: u64) -> Result<RoundtripReport> {
    let mode = UMode::rational(m, n)?;
    let schema = mode.schema();
    let (lo, hi) = (window.0.min(window.1), window.0.max(window.1));
    let mut rep = RoundtripReport::default();
    for k in lo..=hi {
        for r in 0..=degree {
            for s in 0..=degree - r {
                let u = UMonomial::new(r, VertexId::Int(k), s);
                let p = psi_monomial(&mode, &u)?;
                rep.monomials_checked += 1;
                let back = phi_path(&schema, &p)?;
                if back != u {
                    rep.failures.push(format!("phi(psi({u})) = {back}"));
                }
                // Normal-form paths are the psi images; this one starts at k.
                let np = psi_monomial(&mode, &UMonomial::new(r, mode.shift(VertexId::Int(k), 0, s as i64), s))?;
                rep.paths_checked += 1;
                let again = psi_monomial(&mode, &phi_path(&schema, &np)?)?;
                if again != np {
                    rep.failures.push(format!("psi(phi({})) = {}", np.label(&schema), again.label(&schema)));
                }
            }
        }
    }
    let rels = relation_instances(&schema, RelationFamily::Rmn, &Window::Interval(lo, hi))?;
    for g in rels.generators() {
        rep.relations_checked += 1;
        if !phi(g)?.is_zero() {
            rep.failures.push(format!("phi({}) is not zero", g.label()));
        }
    }
    let products = multiplicativity_check(m, n, degree, (lo, hi), samples, seed)?;
    rep.products_checked = products.products_checked;
    rep.failures.extend(products.failures);
    Ok(rep)
}

/// `phi(b a) = phi(b) phi(a)` on `samples` seeded pairs of path sums.
pub fn multiplicativity_check(m: i64, n: i64, degree: u32, window: (i64, i64), samples: usize, seed: u64) -> Result<RoundtripReport> {
    let mode = UMode::rational(m, n)?;
    let schema = mode.schema();
    let (lo, hi) = (window.0.min(window.1), window.0.max(window.1));
    let mut rep = RoundtripReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_pathsum(&schema, (lo, hi), degree as usize, &mut rng)?;
        // Half of the pairs are forced composable by starting at a head of `a`.
        let b = if rng.gen_bool(0.5) {
            random_pathsum(&schema, (lo, hi), degree as usize, &mut rng)?
        } else {
            let heads: Vec<i64> = a.terms().filter_map(|(p, _)| p.head(&schema).ok()?.int()).collect();
            let h = heads[rng.gen_range(0..heads.len())];
            random_pathsum(&schema, (h, h), degree as usize, &mut rng)?
        };
        rep.products_checked += 1;
        let lhs = phi(&pathsum_mul(&b, &a)?)?;
        let rhs = u_mul(&mode, &phi(&b)?, &phi(&a)?)?;
        if lhs != rhs {
            rep.failures.push(format!("phi not multiplicative on ({}) * ({})", b.label(), a.label()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    fn mono(r: u32, k: i64, s: u32) -> UElement {
        UElement::monomial(UMonomial::new(r, int(k), s))
    }

    #[test]
    fn multiplication_examples() {
        let mode = UMode::rational(3, 2).unwrap();
        assert_eq!(u_mul(&mode, &mono(0, 3, 0), &mono(1, 0, 0)).unwrap(), mono(1, 0, 0));
        assert!(u_mul(&mode, &mono(0, 2, 0), &mono(1, 0, 0)).unwrap().is_zero());
        // alpha_2 a_{-2} = a_0 alpha_2.
        assert_eq!(u_mul(&mode, &mono(1, 0, 0), &mono(0, 0, 1)).unwrap(), mono(1, 0, 1));
    }

    #[test]
    fn mode_mismatch() {
        let mode = UMode::rational(3, 2).unwrap();
        let pair = UElement::monomial(UMonomial::new(0, VertexId::Pair(0, 0), 0));
        assert!(u_mul(&mode, &pair, &pair).is_err());
    }

    #[test]
    fn irrational_ignores_tag() {
        let x = UElement::monomial(UMonomial::new(1, VertexId::Pair(0, 0), 0));
        let y = UElement::monomial(UMonomial::new(0, VertexId::Pair(0, 0), 1));
        let a = u_mul(&UMode::Irrational { mu_tag: Some("sqrt2".into()) }, &x, &y).unwrap();
        let b = u_mul(&UMode::Irrational { mu_tag: Some("pi".into()) }, &x, &y).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, UElement::monomial(UMonomial::new(1, VertexId::Pair(0, 0), 1)));
    }

    #[test]
    fn phi_and_psi_examples() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let mode = UMode::rational(3, 2).unwrap();
        let p = Path::new(&s, int(-2), vec![ArrowId::new(2, int(-2)), ArrowId::new(1, int(0))]).unwrap();
        assert_eq!(phi_path(&s, &p).unwrap(), UMonomial::new(1, int(0), 1));
        assert_eq!(phi_path(&s, &Path::trivial(int(7))).unwrap(), UMonomial::idempotent(int(7)));
        assert_eq!(psi_monomial(&mode, &UMonomial::new(1, int(0), 1)).unwrap(), p);
        assert_eq!(psi_monomial(&mode, &UMonomial::idempotent(int(4))).unwrap(), Path::trivial(int(4)));
        let q2 = Path::new(&s, int(1), vec![ArrowId::new(1, int(1)), ArrowId::new(1, int(4))]).unwrap();
        assert_eq!(psi_monomial(&mode, &UMonomial::new(2, int(1), 0)).unwrap(), q2);
        let rel = relation_instances(&s, RelationFamily::Rmn, &Window::Interval(0, 5)).unwrap();
        assert!(phi(&rel.generators()[0]).unwrap().is_zero());
    }

    #[test]
    fn roundtrips() {
        for (m, n) in [(3, 2), (1, -1), (2, 1)] {
            let r = roundtrip_check(m, n, 4, (-10, 10), 100, 5).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.products_checked, 100);
        }
    }
}
