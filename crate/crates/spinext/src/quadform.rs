//! Quadratic refinements of the standard symplectic form.
//!
//! A refinement is stored by its values on the interleaved basis; the
//! value anywhere else is forced by the polarization law
//! q(x + y) = q(x) + q(y) + omega(x, y). Every 2g-bit string is a valid
//! refinement of the standard form, so construction cannot fail.

use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec};
use crate::symplectic::{SymplecticElement, SymplecticSpace};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticRefinement {
    space: SymplecticSpace,
    basis_values: F2Vec,
}

impl std::fmt::Debug for QuadraticRefinement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Quad({})", self.basis_values.to_bit_string())
    }
}

impl QuadraticRefinement {
    pub fn new(space: SymplecticSpace, basis_values: F2Vec) -> Result<Self> {
        if basis_values.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: basis_values.dim(),
            });
        }
        Ok(QuadraticRefinement {
            space,
            basis_values,
        })
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let bits: F2Vec = s.parse()?;
        if bits.dim() == 0 || bits.dim() % 2 != 0 {
            return Err(Error::BadBitString(s.to_string()));
        }
        let space = SymplecticSpace::new(bits.dim() / 2);
        Self::new(space, bits)
    }

    /// All zeros at a = 0; (1, 1, 0, ..., 0) at a = 1.
    pub fn standard_form(g: usize, arf: bool) -> Self {
        let space = SymplecticSpace::new(g);
        let mut bits = F2Vec::zeros(2 * g);
        if arf {
            bits.set(0, true);
            bits.set(1, true);
        }
        QuadraticRefinement {
            space,
            basis_values: bits,
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn basis_values(&self) -> &F2Vec {
        &self.basis_values
    }

    /// q(x) = sum_i x_i q(e_i) + sum_{i<j} x_i x_j omega(e_i, e_j).
    ///
    /// In the interleaved basis the pairing term reduces to the number of
    /// indices k with both x_{a_k} and x_{b_k} set.
    pub fn eval(&self, x: &F2Vec) -> Result<bool> {
        if x.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: x.dim(),
            });
        }
        let linear = self.basis_values.dot(x)?;
        Ok(linear ^ pair_parity(x))
    }

    /// Number of vectors where q vanishes, by exhaustive enumeration.
    pub fn zero_count(&self) -> u64 {
        let n = self.space.dim();
        assert!(n < 48, "zero_count enumeration limited to 2^48 vectors");
        let q_bits = self.basis_values.to_index();
        const EVEN: u64 = 0x5555_5555_5555_5555;
        let mut zeros = 0u64;
        for x in 0..(1u64 << n) {
            let linear = (q_bits & x).count_ones();
            let pairs = (x & (x >> 1) & EVEN).count_ones();
            if (linear + pairs) & 1 == 0 {
                zeros += 1;
            }
        }
        zeros
    }

    /// Arf via the vanishing-count criterion; this is the defining route.
    pub fn arf(&self) -> bool {
        let g = self.genus() as u32;
        let zeros = self.zero_count();
        let half = 1u64 << (2 * g - 1);
        let quarter = 1u64 << (g - 1);
        if zeros == half + quarter {
            false
        } else if zeros == half - quarter {
            true
        } else {
            unreachable!("zero count {zeros} is not a refinement count at genus {g}")
        }
    }

    /// Fast route: sum of q(a_i) q(b_i) over the basis pairs.
    pub fn arf_basis_formula(&self) -> bool {
        let bits = self.basis_values.to_index();
        const EVEN: u64 = 0x5555_5555_5555_5555;
        (bits & (bits >> 1) & EVEN).count_ones() & 1 == 1
    }

    /// The right action (q . M)(x) = q(Mx), computed on basis columns.
    pub fn pullback(&self, m: &SymplecticElement) -> Result<QuadraticRefinement> {
        if m.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: m.space().dim(),
            });
        }
        let n = self.space.dim();
        let mut bits = F2Vec::zeros(n);
        for j in 0..n {
            if self.eval(&m.matrix().column(j))? {
                bits.set(j, true);
            }
        }
        Ok(QuadraticRefinement {
            space: self.space,
            basis_values: bits,
        })
    }

    /// Refinement on genus g1 + g2 whose basis values are the concatenation.
    pub fn direct_sum(&self, other: &QuadraticRefinement) -> QuadraticRefinement {
        let g = self.genus() + other.genus();
        let mut bits = F2Vec::zeros(2 * g);
        for i in 0..self.space.dim() {
            bits.set(i, self.basis_values.get(i));
        }
        for i in 0..other.space.dim() {
            bits.set(self.space.dim() + i, other.basis_values.get(i));
        }
        QuadraticRefinement {
            space: SymplecticSpace::new(g),
            basis_values: bits,
        }
    }

    /// Symplectic change of basis carrying the standard form onto q.
    ///
    /// Returns (M, s) with s = standard_form(g, arf(q)) and pullback(s, M) = q.
    /// Hyperbolic pairs with prescribed q-values are chosen one at a time
    /// inside the omega-orthogonal complement of the pairs already fixed;
    /// for Arf 1 the (1, 1) pair is taken first.
    pub fn reduce_to_standard(&self) -> (SymplecticElement, QuadraticRefinement) {
        let g = self.genus();
        let n = self.space.dim();
        let arf = self.arf();
        let standard = Self::standard_form(g, arf);

        let mut chosen: Vec<F2Vec> = Vec::with_capacity(n);
        for k in 0..g {
            let target_a = arf && k == 0;
            let target_b = arf && k == 0;
            let complement = self.complement_elements(&chosen);
            let (v, w) = self
                .find_hyperbolic_pair(&complement, target_a, target_b)
                .expect("hyperbolic pair with prescribed values must exist");
            chosen.push(v);
            chosen.push(w);
        }

        // Columns of N are the new basis; pullback(q, N) = s, so M = N^{-1}.
        let basis_change = F2Mat::from_columns(&chosen).unwrap();
        let m = SymplecticElement::new(self.space, basis_change)
            .expect("hyperbolic basis is symplectic")
            .inverse();
        debug_assert_eq!(standard.pullback(&m).unwrap(), *self);
        (m, standard)
    }

    /// All elements of the omega-orthogonal complement of `chosen`.
    fn complement_elements(&self, chosen: &[F2Vec]) -> Vec<F2Vec> {
        let n = self.space.dim();
        if chosen.is_empty() {
            return (0..(1u64 << n)).map(|i| F2Vec::from_index(n, i)).collect();
        }
        // omega(x, c) = dot(x, swap_adjacent(c)): the complement is a null space
        let rows: Vec<F2Vec> = chosen.iter().map(|c| c.swap_adjacent()).collect();
        let constraints = F2Mat::from_rows(rows).unwrap();
        let basis = constraints.null_space();
        let k = basis.len();
        let mut out = Vec::with_capacity(1 << k);
        for combo in 0..(1u64 << k) {
            let mut x = F2Vec::zeros(n);
            for (idx, b) in basis.iter().enumerate() {
                if (combo >> idx) & 1 == 1 {
                    x.add_assign(b).unwrap();
                }
            }
            out.push(x);
        }
        out
    }

    fn find_hyperbolic_pair(
        &self,
        complement: &[F2Vec],
        target_a: bool,
        target_b: bool,
    ) -> Option<(F2Vec, F2Vec)> {
        for v in complement {
            if v.is_zero() || self.eval(v).unwrap() != target_a {
                continue;
            }
            for w in complement {
                if self.space.omega(v, w).unwrap() && self.eval(w).unwrap() == target_b {
                    return Some((v.clone(), w.clone()));
                }
            }
        }
        None
    }
}

fn pair_parity(x: &F2Vec) -> bool {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    let bits = x.to_index();
    (bits & (bits >> 1) & EVEN).count_ones() & 1 == 1
}

/// All 2^{2g} refinements at genus g, in ascending bit-string order.
pub fn all_refinements(g: usize) -> Vec<QuadraticRefinement> {
    let space = SymplecticSpace::new(g);
    let n = 2 * g;
    let mut out: Vec<QuadraticRefinement> = (0..(1u64 << n))
        .map(|i| QuadraticRefinement::new(space, F2Vec::from_index(n, i)).unwrap())
        .collect();
    out.sort();
    out
}
