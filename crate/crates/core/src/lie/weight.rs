use std::collections::BTreeMap;

use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{QuiverSchema, VertexId};
use crate::rational::{q, Rational};
use crate::rep::{check_relations, standard_relations, Representation};

/// A representation seen as a weight module: `alpha_1`, `alpha_2` act by the
/// arrow matrices on `(+)_k V(k)` and the Cartan part acts by scalars.
///
/// On `Q_{m,n}` there is one grading operator `beta = gamma + k`. On the grid
/// there are two, `gamma + i` and `j`, so `beta = (gamma + i) + mu j` for any
/// `mu` without computing with `mu` itself.
#[derive(Clone, Debug)]
pub struct WeightModule {
    rep: Representation,
    gamma: Rational,
    offsets: BTreeMap<VertexId, usize>,
    alpha1: Matrix,
    alpha2: Matrix,
    betas: Vec<Matrix>,
}

/// Builds the weight module of `v`, refusing representations that break the
/// commutativity relations of their quiver.
pub fn rep_to_weight_module(v: &Representation, gamma: Rational) -> Result<WeightModule> {
    if !matches!(v.schema(), QuiverSchema::Qmn { .. } | QuiverSchema::QinfXinf) {
        return Err(Error::Unsupported(format!("weight modules are defined on Q_{{m,n}} and the grid, not {}", v.schema())));
    }
    let rels = standard_relations(v)?;
    if let Some(bad) = check_relations(v, &rels)?.first() {
        return domain(format!("relation {} fails with residual {:?}", bad.generator.label(), bad.residual.to_rows()));
    }
    WeightModule::unchecked(v, gamma)
}

impl WeightModule {
    /// The same construction without the relation check, for inspecting
    /// representations that are known to be defective.
    pub fn unchecked(v: &Representation, gamma: Rational) -> Result<Self> {
        let grid = match v.schema() {
            QuiverSchema::Qmn { .. } => false,
            QuiverSchema::QinfXinf => true,
            other => return Err(Error::Unsupported(format!("weight modules are not defined on {other}"))),
        };
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (x, d) in v.dims() {
            offsets.insert(*x, total);
            total += d;
        }
        let mut alphas = [Matrix::zeros(total, total), Matrix::zeros(total, total)];
        for (a, m) in v.stored_arrows() {
            let h = v.schema().head(*a)?;
            alphas[a.family as usize - 1].paste(offsets[&h], offsets[&a.tail], m);
        }
        let graded = |weight: &dyn Fn(VertexId) -> Rational| {
            let mut b = Matrix::zeros(total, total);
            for (x, d) in v.dims() {
                let w = weight(*x);
                for t in 0..*d {
                    b.set(offsets[x] + t, offsets[x] + t, w.clone());
                }
            }
            b
        };
        let betas = if grid {
            vec![
                graded(&|x| &gamma + q(x.pair().map_or(0, |p| p.0))),
                graded(&|x| q(x.pair().map_or(0, |p| p.1))),
            ]
        } else {
            vec![graded(&|x| &gamma + q(x.int().unwrap_or(0)))]
        };
        let [alpha1, alpha2] = alphas;
        Ok(WeightModule { rep: v.clone(), gamma, offsets, alpha1, alpha2, betas })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn alpha1(&self) -> &Matrix {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &Matrix {
        &self.alpha2
    }

    pub fn betas(&self) -> &[Matrix] {
        &self.betas
    }

    /// Where the piece at `x` starts inside the total space.
    pub fn offset(&self, x: VertexId) -> Option<usize> {
        self.offsets.get(&x).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieReport {
    pub checks: Vec<LieCheck>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

/// Verifies the defining commutators as exact matrix identities.
pub fn lie_check(w: &WeightModule) -> LieReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, holds: bool| checks.push(LieCheck { name: name.to_string(), holds });
    let (a1, a2) = (&w.alpha1, &w.alpha2);
    match w.rep.schema() {
        QuiverSchema::Qmn { m, n } => {
            let b = &w.betas[0];
            push("[beta,alpha1] = m alpha1", bracket(b, a1) == a1.scale(&q(*m)));
            push("[beta,alpha2] = n alpha2", bracket(b, a2) == a2.scale(&q(*n)));
        }
        _ => {
            let (b1, b2) = (&w.betas[0], &w.betas[1]);
            push("[beta1,alpha1] = alpha1", bracket(b1, a1) == *a1);
            push("[beta1,alpha2] = 0", bracket(b1, a2).is_zero());
            push("[beta2,alpha1] = 0", bracket(b2, a1).is_zero());
            push("[beta2,alpha2] = alpha2", bracket(b2, a2) == *a2);
        }
    }
    push("alpha1 alpha2 = alpha2 alpha1", bracket(a1, a2).is_zero());
    LieReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ArrowId;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    #[test]
    fn two_point_module() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let v = Representation::new(&s, [(int(0), 1), (int(5), 1)], []).unwrap();
        let w = rep_to_weight_module(&v, q(0)).unwrap();
        assert!(w.alpha1().is_zero() && w.alpha2().is_zero());
        assert!(lie_check(&w).passed());
    }

    #[test]
    fn commuting_square_passes() {
        let s = QuiverSchema::qmn(2, 1).unwrap();
        let one = Matrix::identity(1);
        let v = Representation::new(
            &s,
            [(int(0), 1), (int(1), 1), (int(2), 1), (int(3), 1)],
            [
                (ArrowId::new(1, int(0)), one.clone()),
                (ArrowId::new(2, int(0)), one.clone()),
                (ArrowId::new(1, int(1)), one.clone()),
                (ArrowId::new(2, int(2)), one),
            ],
        )
        .unwrap();
        let w = rep_to_weight_module(&v, q(5)).unwrap();
        assert!(lie_check(&w).passed());
    }

    #[test]
    fn noncommuting_square_detected() {
        let s = QuiverSchema::qmn(2, 1).unwrap();
        let one = Matrix::identity(1);
        let v = Representation::new(
            &s,
            [(int(0), 1), (int(1), 1), (int(2), 1), (int(3), 1)],
            [
                (ArrowId::new(1, int(0)), one.clone()),
                (ArrowId::new(2, int(0)), one.clone()),
                (ArrowId::new(1, int(1)), one.clone()),
                (ArrowId::new(2, int(2)), one.scale(&q(2))),
            ],
        )
        .unwrap();
        assert!(rep_to_weight_module(&v, q(0)).is_err());
        let r = lie_check(&WeightModule::unchecked(&v, q(0)).unwrap());
        assert_eq!(r.get("alpha1 alpha2 = alpha2 alpha1"), Some(false));
        assert_eq!(r.get("[beta,alpha1] = m alpha1"), Some(true));
    }
}
