use std::fmt;

use num_integer::Integer;

use crate::error::{domain, Result};

/// A vertex of one of the supported quiver families.
///
/// Integer vertices serve `Q_{m,n}`, the cyclic/line quivers and type-A
/// windows; pairs serve the grid quiver `Q_{inf x inf}`. A vertex is only
/// meaningful against the schema that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Int(i64),
    Pair(i64, i64),
}

impl VertexId {
    pub fn int(self) -> Option<i64> {
        match self {
            VertexId::Int(k) => Some(k),
            VertexId::Pair(..) => None,
        }
    }

    pub fn pair(self) -> Option<(i64, i64)> {
        match self {
            VertexId::Pair(i, j) => Some((i, j)),
            VertexId::Int(_) => None,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(k) => write!(f, "{k}"),
            VertexId::Pair(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// An arrow named by its family and its tail vertex.
///
/// Family 1 is `rho_1` (on `Q_{m,n}` and the grid) or the forward arrow `rho_i`
/// (cyclic and line quivers); family 2 is `rho_2` or the backward arrow
/// `rhobar_i`. Type-A windows number their step families from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId {
    pub family: u8,
    pub tail: VertexId,
}

impl ArrowId {
    pub fn new(family: u8, tail: VertexId) -> Self {
        ArrowId { family, tail }
    }
}

/// A quiver family, described intensionally by parameters and step rules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuiverSchema {
    /// Vertices `Z`; `rho_1^k: k -> k+m`, `rho_2^k: k -> k+n`.
    Qmn { m: i64, n: i64 },
    /// Vertices `Z x Z`; `rho_1^{ij}` steps by `(1,0)`, `rho_2^{ij}` by `(0,1)`.
    QinfXinf,
    /// Vertices `Z/sZ`; `rho_i: i -> i+1`, `rhobar_i: i -> i-1`. `s = 0` is the line quiver `Q_inf`.
    Qhat { s: u64 },
    /// Finite window `[lo, hi]` with one arrow family per step `d`: `k -> k+d` whenever both ends lie inside.
    Awindow { lo: i64, hi: i64, steps: Vec<i64> },
}

impl QuiverSchema {
    pub fn qmn(m: i64, n: i64) -> Result<Self> {
        let s = QuiverSchema::Qmn { m, n };
        s.validate()?;
        Ok(s)
    }

    pub fn qhat(s: u64) -> Self {
        QuiverSchema::Qhat { s }
    }

    pub fn qinf() -> Self {
        QuiverSchema::Qhat { s: 0 }
    }

    pub fn grid() -> Self {
        QuiverSchema::QinfXinf
    }

    pub fn a_window(lo: i64, hi: i64, steps: Vec<i64>) -> Result<Self> {
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let s = QuiverSchema::Awindow { lo, hi, steps };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            QuiverSchema::Qmn { m, n } => {
                if *m == 0 || *n == 0 {
                    return domain(format!("Q_{{m,n}} needs nonzero m, n (got {m}, {n})"));
                }
                if m.gcd(n) != 1 {
                    return domain(format!("Q_{{m,n}} needs gcd(m,n) = 1 (got {m}, {n})"));
                }
                Ok(())
            }
            QuiverSchema::Awindow { lo, hi, steps } => {
                if lo > hi {
                    return domain("window bounds are reversed");
                }
                if steps.is_empty() || steps.len() > u8::MAX as usize {
                    return domain("a type-A window needs between 1 and 255 step families");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn family_count(&self) -> u8 {
        match self {
            QuiverSchema::Awindow { steps, .. } => steps.len() as u8,
            _ => 2,
        }
    }

    /// Whether the vertex set is finite.
    pub fn is_finite(&self) -> bool {
        matches!(self, QuiverSchema::Qhat { s } if *s > 0) || matches!(self, QuiverSchema::Awindow { .. })
    }

    pub fn is_valid_vertex(&self, v: VertexId) -> bool {
        match (self, v) {
            (QuiverSchema::Qmn { .. }, VertexId::Int(_)) => true,
            (QuiverSchema::QinfXinf, VertexId::Pair(..)) => true,
            (QuiverSchema::Qhat { s }, VertexId::Int(k)) => *s == 0 || (0..*s as i64).contains(&k),
            (QuiverSchema::Awindow { lo, hi, .. }, VertexId::Int(k)) => (*lo..=*hi).contains(&k),
            _ => false,
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.is_valid_vertex(v) {
            Ok(())
        } else {
            domain(format!("vertex {v} is not a vertex of {self}"))
        }
    }

    /// Reduces an integer label to the canonical vertex (residue mod `s` on cyclic quivers).
    pub fn vertex(&self, k: i64) -> VertexId {
        match self {
            QuiverSchema::Qhat { s } if *s > 0 => VertexId::Int(k.rem_euclid(*s as i64)),
            _ => VertexId::Int(k),
        }
    }

    /// Head of `arrow`, or `None` when the arrow does not exist in this schema.
    fn raw_head(&self, a: ArrowId) -> Option<VertexId> {
        if a.family == 0 || a.family > self.family_count() || !self.is_valid_vertex(a.tail) {
            return None;
        }
        match (self, a.tail) {
            (QuiverSchema::Qmn { m, n }, VertexId::Int(k)) => {
                Some(VertexId::Int(k + if a.family == 1 { *m } else { *n }))
            }
            (QuiverSchema::QinfXinf, VertexId::Pair(i, j)) => {
                Some(if a.family == 1 { VertexId::Pair(i + 1, j) } else { VertexId::Pair(i, j + 1) })
            }
            (QuiverSchema::Qhat { .. }, VertexId::Int(k)) => {
                Some(self.vertex(if a.family == 1 { k + 1 } else { k - 1 }))
            }
            (QuiverSchema::Awindow { steps, .. }, VertexId::Int(k)) => {
                let h = VertexId::Int(k + steps[a.family as usize - 1]);
                self.is_valid_vertex(h).then_some(h)
            }
            _ => None,
        }
    }

    pub fn is_valid_arrow(&self, a: ArrowId) -> bool {
        self.raw_head(a).is_some()
    }

    pub fn check_arrow(&self, a: ArrowId) -> Result<()> {
        if self.is_valid_arrow(a) {
            Ok(())
        } else {
            domain(format!("{} is not an arrow of {self}", self.arrow_label(a)))
        }
    }

    pub fn tail(&self, a: ArrowId) -> Result<VertexId> {
        self.check_arrow(a)?;
        Ok(a.tail)
    }

    pub fn head(&self, a: ArrowId) -> Result<VertexId> {
        match self.raw_head(a) {
            Some(h) => Ok(h),
            None => domain(format!("{} is not an arrow of {self}", self.arrow_label(a))),
        }
    }

    /// All arrows with tail `v`, ordered by family.
    pub fn arrows_from(&self, v: VertexId) -> Result<Vec<ArrowId>> {
        self.check_vertex(v)?;
        Ok((1..=self.family_count())
            .map(|f| ArrowId::new(f, v))
            .filter(|a| self.is_valid_arrow(*a))
            .collect())
    }

    /// All arrows with head `v`, ordered by family.
    pub fn arrows_into(&self, v: VertexId) -> Result<Vec<ArrowId>> {
        self.check_vertex(v)?;
        let candidates: Vec<ArrowId> = match (self, v) {
            (QuiverSchema::Qmn { m, n }, VertexId::Int(k)) => {
                vec![ArrowId::new(1, VertexId::Int(k - m)), ArrowId::new(2, VertexId::Int(k - n))]
            }
            (QuiverSchema::QinfXinf, VertexId::Pair(i, j)) => {
                vec![ArrowId::new(1, VertexId::Pair(i - 1, j)), ArrowId::new(2, VertexId::Pair(i, j - 1))]
            }
            (QuiverSchema::Qhat { .. }, VertexId::Int(k)) => {
                vec![ArrowId::new(1, self.vertex(k - 1)), ArrowId::new(2, self.vertex(k + 1))]
            }
            (QuiverSchema::Awindow { steps, .. }, VertexId::Int(k)) => steps
                .iter()
                .enumerate()
                .map(|(f, d)| ArrowId::new(f as u8 + 1, VertexId::Int(k - d)))
                .collect(),
            _ => Vec::new(),
        };
        Ok(candidates
            .into_iter()
            .filter(|a| self.raw_head(*a) == Some(v))
            .collect())
    }

    /// Vertices joined to `v` by one arrow in either direction, plus `v` itself.
    pub fn neighborhood(&self, v: VertexId) -> Result<Vec<VertexId>> {
        let mut out = vec![v];
        for a in self.arrows_from(v)? {
            out.push(self.head(a)?);
        }
        for a in self.arrows_into(v)? {
            out.push(a.tail);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn arrow_label(&self, a: ArrowId) -> String {
        match self {
            QuiverSchema::Qmn { .. } | QuiverSchema::QinfXinf => format!("rho{}^{}", a.family, a.tail),
            QuiverSchema::Qhat { .. } => {
                if a.family == 1 {
                    format!("rho_{}", a.tail)
                } else {
                    format!("rhobar_{}", a.tail)
                }
            }
            QuiverSchema::Awindow { .. } => format!("a{}^{}", a.family, a.tail),
        }
    }
}

impl fmt::Display for QuiverSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverSchema::Qmn { m, n } => write!(f, "Q_{{{m},{n}}}"),
            QuiverSchema::QinfXinf => write!(f, "Q_{{inf x inf}}"),
            QuiverSchema::Qhat { s: 0 } => write!(f, "Q_inf"),
            QuiverSchema::Qhat { s } => write!(f, "Qhat_{s}"),
            QuiverSchema::Awindow { lo, hi, steps } => write!(f, "A[{lo},{hi}] steps {steps:?}"),
        }
    }
}

/// A finite vertex window over a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// Integer interval `[lo, hi]`; on the grid it means the square `[lo,hi]^2`.
    Interval(i64, i64),
    /// Rectangle `[i0,i1] x [j0,j1]` on the grid.
    Rect { i: (i64, i64), j: (i64, i64) },
    /// Every vertex; only legal for finite schemas.
    Full,
}

impl Window {
    pub fn interval(a: i64, b: i64) -> Self {
        Window::Interval(a.min(b), a.max(b))
    }

    pub fn rect(i: (i64, i64), j: (i64, i64)) -> Self {
        Window::Rect { i: (i.0.min(i.1), i.0.max(i.1)), j: (j.0.min(j.1), j.0.max(j.1)) }
    }

    /// Enumerates the window's vertices in ascending order.
    pub fn vertices(&self, schema: &QuiverSchema) -> Result<Vec<VertexId>> {
        match (schema, self) {
            (QuiverSchema::QinfXinf, Window::Interval(a, b)) => Window::rect((*a, *b), (*a, *b)).vertices(schema),
            (QuiverSchema::QinfXinf, Window::Rect { i, j }) => {
                let mut out = Vec::new();
                for x in i.0.min(i.1)..=i.0.max(i.1) {
                    for y in j.0.min(j.1)..=j.0.max(j.1) {
                        out.push(VertexId::Pair(x, y));
                    }
                }
                Ok(out)
            }
            (QuiverSchema::QinfXinf, Window::Full) => domain("the grid quiver has no finite full window"),
            (_, Window::Rect { .. }) => domain(format!("rectangular windows only apply to the grid, not {schema}")),
            (QuiverSchema::Qhat { s }, _) if *s > 0 => Ok((0..*s as i64).map(VertexId::Int).collect()),
            (QuiverSchema::Awindow { lo, hi, .. }, Window::Full) => Ok((*lo..=*hi).map(VertexId::Int).collect()),
            (QuiverSchema::Awindow { lo, hi, .. }, Window::Interval(a, b)) => {
                let (a, b) = ((*a.min(b)).max(*lo), (*a.max(b)).min(*hi));
                Ok((a..=b).map(VertexId::Int).collect())
            }
            (_, Window::Full) => domain(format!("{schema} is infinite; give an explicit window")),
            (_, Window::Interval(a, b)) => Ok((*a.min(b)..=*a.max(b)).map(VertexId::Int).collect()),
        }
    }
}
