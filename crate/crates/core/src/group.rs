//! Finite groups given by a multiplication table.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("group must be nonempty".into()));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::Validation(
                "multiplication table is not square or not closed".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Validation("group table has no identity".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::Validation(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!(
                            "group table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    pub fn cyclic(m: usize) -> Self {
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Z_{m1} × Z_{m2} × …, elements enumerated with the last factor fastest.
    pub fn cyclic_product(orders: &[usize]) -> Self {
        let n: usize = orders.iter().product();
        let decode = |mut x: usize| {
            let mut digits = vec![0; orders.len()];
            for (k, &m) in orders.iter().enumerate().rev() {
                digits[k] = x % m;
                x /= m;
            }
            digits
        };
        let encode = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (&x, &m)| acc * m + x);
        let table = (0..n)
            .map(|a| {
                let da = decode(a);
                (0..n)
                    .map(|b| {
                        let db = decode(b);
                        let s: Vec<usize> = da
                            .iter()
                            .zip(&db)
                            .zip(orders)
                            .map(|((x, y), m)| (x + y) % m)
                            .collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of cyclic groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut set = vec![false; self.order()];
        for &e in elems {
            if e >= self.order() {
                return false;
            }
            set[e] = true;
        }
        set[self.identity]
            && elems
                .iter()
                .all(|&a| set[self.inv(a)] && elems.iter().all(|&b| set[self.mul(a, b)]))
    }

    /// Subgroup generated by `gens`, sorted ascending.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.order()];
        set[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set[y] {
                    set[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| set[i]).collect()
    }

    /// A small generating set of the subgroup `elems`, chosen greedily in ascending order.
    pub fn generators_of(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &e in elems {
            if !span.contains(&e) {
                gens.push(e);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four() {
        let g = FiniteGroup::cyclic_product(&[2, 2]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        assert!(g.is_subgroup(&[0, 1]));
        assert!(!g.is_subgroup(&[1]));
        assert_eq!(g.generators_of(&[0, 1, 2, 3]), vec![1, 2]);
    }

    #[test]
    fn rejects_non_group() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn cyclic_powers() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.pow(1, -1), 5);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.generated(&[2]), vec![0, 2, 4]);
    }
}
