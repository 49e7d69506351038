use std::sync::Arc;

use super::HopfAlgebraData;
use crate::error::{Error, Result};
use crate::linalg::{nonzero_count, vec_kron, vec_sub, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Cyclo;

/// Hopf subalgebra A ⊆ H; column a of `embed` is the image of the a-th basis vector of A.
#[derive(Clone, Debug)]
pub struct SubHopfEmbedding {
    small: Arc<HopfAlgebraData>,
    big: Arc<HopfAlgebraData>,
    embed: Matrix,
    // left inverse of `embed`
    retract: Matrix,
}

impl SubHopfEmbedding {
    pub fn new(
        small: Arc<HopfAlgebraData>,
        big: Arc<HopfAlgebraData>,
        embed: Matrix,
    ) -> Result<Self> {
        if embed.rows() != big.dim() || embed.cols() != small.dim() {
            return Err(Error::Structural(
                "embedding matrix has the wrong shape".into(),
            ));
        }
        if embed.rank() != small.dim() {
            return Err(Error::Validation("embedding is not injective".into()));
        }
        // rows at the pivots of Eᵀ form an invertible square block
        let (_, rows) = embed.transpose().rref();
        let block_inv = embed
            .select_rows(&rows)
            .inverse()
            .expect("pivot rows of an injective map are independent");
        let mut select = Matrix::zeros(rows.len(), embed.rows(), embed.order());
        for (i, &r) in rows.iter().enumerate() {
            select[(i, r)] = Cyclo::one(embed.order());
        }
        let retract = block_inv.mul(&select);
        Ok(SubHopfEmbedding {
            small,
            big,
            embed,
            retract,
        })
    }

    /// Embedding of H into itself.
    pub fn identity(h: Arc<HopfAlgebraData>) -> Self {
        let d = h.dim();
        let o = h.order();
        Self::new(h.clone(), h, Matrix::identity(d, o)).expect("identity is injective")
    }

    /// Embedding of 𝕜 = span{1}.
    pub fn ground(h: Arc<HopfAlgebraData>) -> Result<Self> {
        let o = h.order();
        let k = Arc::new(ground_hopf(o)?);
        let embed = Matrix::column_vector(h.unit(), o);
        Self::new(k, h, embed)
    }

    pub fn small(&self) -> &Arc<HopfAlgebraData> {
        &self.small
    }

    pub fn big(&self) -> &Arc<HopfAlgebraData> {
        &self.big
    }

    pub fn embed_matrix(&self) -> &Matrix {
        &self.embed
    }

    pub fn embed(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        self.embed.mul_vec(a)
    }

    /// Coordinates in A of an element of H lying in the image.
    pub fn pull_back(&self, h: &[Cyclo]) -> Option<Vec<Cyclo>> {
        let a = self.retract.mul_vec(h);
        (self.embed.mul_vec(&a) == h).then_some(a)
    }

    pub fn image(&self) -> Subspace {
        Subspace::column_span(&self.embed)
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let (s, b) = (&*self.small, &*self.big);
        let da = s.dim();
        let mut mult = nonzero_count(&vec_sub(&self.embed(s.unit()), b.unit()));
        let mut comult = 0;
        let mut counit = 0;
        let mut antipode = 0;
        for i in 0..da {
            let ei = s.alg().basis_vec(i);
            let hi = self.embed(&ei);
            for j in 0..da {
                let ej = s.alg().basis_vec(j);
                let lhs = self.embed(&s.product(&ei, &ej));
                let rhs = b.product(&hi, &self.embed(&ej));
                mult += nonzero_count(&vec_sub(&lhs, &rhs));
            }
            let ds = s.comult(&ei);
            let mut pushed = crate::linalg::zero_vec(b.dim() * b.dim(), b.order());
            for (p, c) in ds.iter().enumerate() {
                if !c.is_zero() {
                    let (x, y) = (p / da, p % da);
                    let t = vec_kron(&self.embed.column(x), &self.embed.column(y));
                    crate::linalg::axpy(&mut pushed, c, &t);
                }
            }
            comult += nonzero_count(&vec_sub(&pushed, &b.comult(&hi)));
            counit += usize::from(s.counit_of(&ei) != b.counit_of(&hi));
            antipode += nonzero_count(&vec_sub(
                &self.embed(&s.apply_antipode(&ei)),
                &b.apply_antipode(&hi),
            ));
        }
        r.residual("embedding: multiplicative and unital", mult);
        r.residual("embedding: intertwines comultiplication", comult);
        r.residual("embedding: intertwines counit", counit);
        r.residual("embedding: intertwines antipode", antipode);
        r
    }
}

/// The one-dimensional Hopf algebra 𝕜.
pub fn ground_hopf(order: u32) -> Result<HopfAlgebraData> {
    let one = Cyclo::one(order);
    let alg = super::AlgebraData::from_products(
        1,
        order,
        vec![one.clone()],
        vec!["1".into()],
        |_, _| vec![(0, one.clone())],
    )?;
    HopfAlgebraData::new(
        Arc::new(alg),
        vec![vec![(0, 0, one.clone())]],
        vec![one],
        None,
    )
}
