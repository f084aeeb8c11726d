//! The standard symplectic space over GF(2) and the group Sp(2g, Z2).
//!
//! The basis is interleaved as (a_1, b_1, ..., a_g, b_g): a_i sits at
//! index 2i, b_i at index 2i+1, and omega pairs a_i with b_i. Matrices
//! act on column vectors, so the image of e_j is column j.

use num_bigint::BigUint;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec};

/// The genus-g symplectic space Z2^{2g} with the standard pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticSpace {
    g: usize,
}

impl SymplecticSpace {
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "genus must be positive");
        SymplecticSpace { g }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// Basis vector a_i, 0-based.
    pub fn a(&self, i: usize) -> F2Vec {
        F2Vec::basis(self.dim(), 2 * i)
    }

    /// Basis vector b_i, 0-based.
    pub fn b(&self, i: usize) -> F2Vec {
        F2Vec::basis(self.dim(), 2 * i + 1)
    }

    /// The intersection pairing: sum of x_{a_i} y_{b_i} + x_{b_i} y_{a_i}.
    pub fn omega(&self, x: &F2Vec, y: &F2Vec) -> Result<bool> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        x.dot(&y.swap_adjacent())
    }

    /// Checks omega(M e_i, M e_j) = omega(e_i, e_j) over all basis pairs.
    pub fn is_symplectic(&self, m: &F2Mat) -> Result<bool> {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows().max(m.cols()),
            });
        }
        let cols: Vec<F2Vec> = (0..n).map(|j| m.column(j)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let expected = i / 2 == j / 2; // only (a_k, b_k) pairs meet
                if self.omega(&cols[i], &cols[j])? != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The transvection x -> x + omega(x, v) v for nonzero v.
    pub fn transvection(&self, v: &F2Vec) -> Result<SymplecticElement> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let n = self.dim();
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.dim(),
            });
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e = F2Vec::basis(n, j);
            let col = if self.omega(&e, v)? { e.add(v)? } else { e };
            cols.push(col);
        }
        let matrix = F2Mat::from_columns(&cols)?;
        debug_assert!(self.is_symplectic(&matrix).unwrap());
        Ok(SymplecticElement {
            space: *self,
            matrix,
        })
    }

    /// All 2^{2g} - 1 transvections, in ascending order of the defining vector.
    pub fn transvection_generators(&self) -> Vec<SymplecticElement> {
        let n = self.dim();
        (1..(1u64 << n))
            .map(|i| self.transvection(&F2Vec::from_index(n, i)).unwrap())
            .collect()
    }

    /// |Sp(2g, Z2)| via a point-stabilizer chain on the standard basis.
    ///
    /// At each level the orbit of the next basis vector is computed by BFS
    /// under the current generators, Schreier generators are formed from the
    /// transversal, and the product of orbit sizes accumulates the order.
    pub fn group_order(&self) -> BigUint {
        let n = self.dim();
        let mut generators: Vec<F2Mat> = self
            .transvection_generators()
            .into_iter()
            .map(|t| t.matrix)
            .collect();
        let identity = F2Mat::identity(n);
        let mut order = BigUint::from(1u32);
        for level in 0..n {
            if generators.is_empty() {
                break;
            }
            let base = F2Vec::basis(n, level);
            // orbit BFS with transversal: point -> group element carrying base there
            let mut transversal: HashMap<F2Vec, F2Mat> = HashMap::new();
            transversal.insert(base.clone(), identity.clone());
            let mut queue = VecDeque::from([base.clone()]);
            while let Some(x) = queue.pop_front() {
                let rep = transversal[&x].clone();
                for gen in &generators {
                    let y = gen.apply(&x).unwrap();
                    if !transversal.contains_key(&y) {
                        transversal.insert(y.clone(), gen.mul(&rep).unwrap());
                        queue.push_back(y);
                    }
                }
            }
            order *= BigUint::from(transversal.len());
            // Schreier generators of the stabilizer of `base`
            let mut next: HashSet<F2Mat> = HashSet::new();
            for (x, u_x) in &transversal {
                for gen in &generators {
                    let y = gen.apply(x).unwrap();
                    let u_y_inv = transversal[&y].inverse().unwrap();
                    let schreier = u_y_inv.mul(gen).unwrap().mul(u_x).unwrap();
                    if schreier != identity {
                        next.insert(schreier);
                    }
                }
            }
            generators = next.into_iter().collect();
        }
        order
    }
}

/// An element of Sp(2g, Z2), validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticElement {
    space: SymplecticSpace,
    matrix: F2Mat,
}

impl SymplecticElement {
    pub fn new(space: SymplecticSpace, matrix: F2Mat) -> Result<Self> {
        if !space.is_symplectic(&matrix)? {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticElement { space, matrix })
    }

    pub fn identity(space: SymplecticSpace) -> Self {
        SymplecticElement {
            space,
            matrix: F2Mat::identity(space.dim()),
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn matrix(&self) -> &F2Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &F2Vec) -> Result<F2Vec> {
        self.matrix.apply(v)
    }

    pub fn mul(&self, other: &SymplecticElement) -> Result<SymplecticElement> {
        Ok(SymplecticElement {
            space: self.space,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> SymplecticElement {
        SymplecticElement {
            space: self.space,
            // symplectic matrices are invertible
            matrix: self.matrix.inverse().unwrap(),
        }
    }
}
