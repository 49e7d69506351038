use crate::error::{Error, Result};
use crate::linalg::{nonzero_count, unit_vec, vec_sub, zero_vec, Matrix};
use crate::report::Report;
use crate::scalar::Cyclo;

/// Sparse linear combination of basis indices.
pub type Terms = Vec<(usize, Cyclo)>;

/// Finite-dimensional algebra by structure constants: e_i·e_j = Σ_k m[i][j][k] e_k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraData {
    dim: usize,
    order: u32,
    // indexed by i·dim + j; entries with nonzero coefficient only, sorted by k
    mult: Vec<Terms>,
    unit: Vec<Cyclo>,
    labels: Vec<String>,
}

impl AlgebraData {
    /// Builds from the basis-product function; terms with equal index are summed.
    pub fn from_products(
        dim: usize,
        order: u32,
        unit: Vec<Cyclo>,
        labels: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Terms,
    ) -> Result<Self> {
        if unit.len() != dim || labels.len() != dim {
            return Err(Error::Structural(format!(
                "algebra of dim {dim} given unit of length {} and {} labels",
                unit.len(),
                labels.len()
            )));
        }
        let mut mult = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mult.push(normalize_terms(product(i, j), dim, order)?);
            }
        }
        Ok(AlgebraData {
            dim,
            order,
            mult,
            unit,
            labels,
        })
    }

    /// Builds from sparse structure-constant entries (i, j, k, m_ijk).
    pub fn from_entries(
        dim: usize,
        order: u32,
        unit: Vec<Cyclo>,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Cyclo)>,
    ) -> Result<Self> {
        let mut table: Vec<Terms> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Structural(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            table[i * dim + j].push((k, c));
        }
        Self::from_products(dim, order, unit, labels, |i, j| {
            std::mem::take(&mut table[i * dim + j])
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn unit(&self) -> &[Cyclo] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Cyclo)] {
        &self.mult[i * self.dim + j]
    }

    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> Cyclo {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| Cyclo::zero(self.order), |(_, c)| c.clone())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Cyclo> {
        unit_vec(self.dim, i, self.order)
    }

    pub fn zero(&self) -> Vec<Cyclo> {
        zero_vec(self.dim, self.order)
    }

    pub fn product(&self, a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, m) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&xy * m);
                }
            }
        }
        out
    }

    /// Matrix of t ↦ a·t.
    pub fn left_mult_matrix(&self, a: &[Cyclo]) -> Matrix {
        let cols: Vec<Vec<Cyclo>> = (0..self.dim)
            .map(|t| self.product(a, &self.basis_vec(t)))
            .collect();
        Matrix::from_columns(self.dim, self.order, &cols)
    }

    /// Matrix of t ↦ t·a.
    pub fn right_mult_matrix(&self, a: &[Cyclo]) -> Matrix {
        let cols: Vec<Vec<Cyclo>> = (0..self.dim)
            .map(|t| self.product(&self.basis_vec(t), a))
            .collect();
        Matrix::from_columns(self.dim, self.order, &cols)
    }

    /// Solves a·x = 1 via the left-regular matrix and checks x·a = 1 too.
    pub fn inverse(&self, a: &[Cyclo]) -> Option<Vec<Cyclo>> {
        let x = self.left_mult_matrix(a).inverse()?.mul_vec(&self.unit);
        (self.product(&x, a) == self.unit).then_some(x)
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let mut assoc = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..self.dim {
                    let lhs = self.product(&ij, &self.basis_vec(k));
                    let jk = self.product(&self.basis_vec(j), &self.basis_vec(k));
                    let rhs = self.product(&self.basis_vec(i), &jk);
                    assoc += nonzero_count(&vec_sub(&lhs, &rhs));
                }
            }
        }
        r.residual("algebra: associativity", assoc);
        let mut unit = 0;
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            unit += nonzero_count(&vec_sub(&self.product(&self.unit, &e), &e));
            unit += nonzero_count(&vec_sub(&self.product(&e, &self.unit), &e));
        }
        r.residual("algebra: unit", unit);
        r
    }
}

fn normalize_terms(terms: Terms, dim: usize, order: u32) -> Result<Terms> {
    let mut acc = zero_vec(dim, order);
    for (k, c) in terms {
        if k >= dim {
            return Err(Error::Structural(format!(
                "basis index {k} out of range for dim {dim}"
            )));
        }
        if c.order() != order {
            return Err(Error::Structural(format!(
                "scalar of order {} in an algebra over order {order}",
                c.order()
            )));
        }
        acc[k] = &acc[k] + &c;
    }
    Ok(acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

pub fn terms_to_vec(terms: &[(usize, Cyclo)], dim: usize, order: u32) -> Vec<Cyclo> {
    let mut v = zero_vec(dim, order);
    for (k, c) in terms {
        v[*k] = &v[*k] + c;
    }
    v
}
