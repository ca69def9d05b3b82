use std::sync::Arc;

use num_traits::Zero;

use super::morphism::{hom_basis, RepMorphism};
use super::representation::Representation;
use crate::error::{domain, Result};
use crate::linalg::{Matrix, SpanCoordinates};
use crate::rational::Rational;

/// `End(V)` with a basis, coordinates in that basis, and its Jacobson radical.
///
/// The radical is the kernel of the trace form `(x, y) -> Tr(L_x L_y)` of the
/// left regular representation, which in characteristic zero is exactly `J`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    rep: Arc<Representation>,
    basis: Vec<RepMorphism>,
    coords: Option<SpanCoordinates>,
    structure: Vec<Vec<Vec<Rational>>>,
    gram: Matrix,
    gram_rank: usize,
}

impl EndAlgebra {
    pub fn new(v: &Arc<Representation>) -> Result<Self> {
        let basis = hom_basis(v, v)?;
        let d = basis.len();
        let coords = if d == 0 {
            None
        } else {
            let flat: Vec<Vec<Rational>> = basis.iter().map(RepMorphism::flatten).collect();
            let cols = flat[0].len();
            Some(SpanCoordinates::new(Matrix::from_rows(flat, cols)?)?)
        };
        let mut alg = EndAlgebra { rep: v.clone(), basis, coords, structure: Vec::new(), gram: Matrix::zeros(d, d), gram_rank: 0 };
        let structure: Vec<Vec<Vec<Rational>>> = alg
            .basis
            .iter()
            .map(|bi| alg.basis.iter().map(|bj| alg.coordinates(&bi.after(bj)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        // (L_i)_{kl} = c[i][l][k], so Tr(L_i L_j) = sum_{k,l} c[i][l][k] c[j][k][l].
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut t = Rational::zero();
                for k in 0..d {
                    for l in 0..d {
                        let (a, b) = (&structure[i][l][k], &structure[j][k][l]);
                        if !a.is_zero() && !b.is_zero() {
                            t += a * b;
                        }
                    }
                }
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        alg.gram_rank = gram.rank();
        alg.gram = gram;
        alg.structure = structure;
        Ok(alg)
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn radical_dim(&self) -> usize {
        self.dim() - self.gram_rank
    }

    /// `dim End(V)/J`.
    pub fn semisimple_dim(&self) -> usize {
        self.gram_rank
    }

    /// `End(V)` is local exactly when its semisimple quotient is the ground field.
    pub fn is_local(&self) -> bool {
        self.gram_rank == 1
    }

    pub fn coordinates(&self, x: &RepMorphism) -> Result<Vec<Rational>> {
        if *x.source() != self.rep || *x.target() != self.rep {
            return domain("morphism is not an endomorphism of this representation");
        }
        match &self.coords {
            None => Ok(Vec::new()),
            Some(c) => c
                .try_coordinates(&x.flatten())
                .map_or_else(|| domain("morphism does not intertwine"), Ok),
        }
    }

    pub fn element(&self, coords: &[Rational]) -> Result<RepMorphism> {
        let mut acc = RepMorphism::zero(self.rep.clone(), self.rep.clone())?;
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// `c[i][j]` holds the coordinates of `b_i b_j`.
    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure
    }

    pub fn radical_basis(&self) -> Result<Vec<RepMorphism>> {
        let k = self.gram.kernel();
        (0..k.cols())
            .map(|j| self.element(&(0..k.rows()).map(|i| k.get(i, j).clone()).collect::<Vec<_>>()))
            .collect()
    }

    pub fn in_radical(&self, x: &RepMorphism) -> Result<bool> {
        let c = self.coordinates(x)?;
        if c.is_empty() {
            return Ok(true);
        }
        Ok((&self.gram * &Matrix::column(c)).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{ArrowId, QuiverSchema, VertexId};
    use crate::rep::direct_sum;

    #[test]
    fn simple_is_local() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let v = Arc::new(Representation::simple(&s, VertexId::Int(4)).unwrap());
        let e = EndAlgebra::new(&v).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (1, 0));
        assert!(e.is_local());
    }

    #[test]
    fn sum_of_two_simples() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let v = Arc::new(Representation::new(&s, [(VertexId::Int(0), 1), (VertexId::Int(5), 1)], []).unwrap());
        let e = EndAlgebra::new(&v).unwrap();
        assert_eq!((e.dim(), e.semisimple_dim()), (2, 2));
        assert!(!e.is_local());
    }

    #[test]
    fn cyclic_with_loop_has_radical() {
        // One vertex with a nilpotent loop: End = Q[t]/t^2.
        let s = QuiverSchema::qhat(1);
        let v = Arc::new(
            Representation::new(
                &s,
                [(VertexId::Int(0), 2)],
                [(ArrowId::new(1, VertexId::Int(0)), Matrix::from_i64(2, 2, &[0, 0, 1, 0]))],
            )
            .unwrap(),
        );
        let e = EndAlgebra::new(&v).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (2, 1));
        assert!(e.is_local());
        for r in e.radical_basis().unwrap() {
            assert!(e.in_radical(&r).unwrap());
        }
        assert!(!e.in_radical(&RepMorphism::identity(v.clone())).unwrap());
    }

    #[test]
    fn structure_constants_of_matrix_algebra() {
        let s = QuiverSchema::qmn(3, 2).unwrap();
        let x = Representation::simple(&s, VertexId::Int(0)).unwrap();
        let v = Arc::new(direct_sum(&x, &x).unwrap());
        let e = EndAlgebra::new(&v).unwrap();
        assert_eq!((e.dim(), e.semisimple_dim()), (4, 4));
        let c = e.structure_constants();
        assert_eq!(c.len(), 4);
        // The identity is a combination of the basis and acts as a unit.
        let id = e.coordinates(&RepMorphism::identity(v.clone())).unwrap();
        for (i, b) in e.basis().iter().enumerate() {
            let prod = e.coordinates(&RepMorphism::identity(v.clone()).after(b).unwrap()).unwrap();
            let mut expect = vec![Rational::zero(); e.dim()];
            expect[i] = num_traits::One::one();
            assert_eq!(prod, expect);
        }
        assert_eq!(id.len(), 4);
    }
}
