//! Spin structures on the closed genus-g surface, modeled as quadratic
//! refinements: the bounding/unbounding partition, its counts, the
//! Sp(2g, Z2) action by pullback, orbits, index bounds, and the search
//! for an element fixing no bounding structure.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{orbit_closure, OrbitResult, DEFAULT_STATE_BUDGET};
use crate::quadform::{all_refinements, QuadraticRefinement};
use crate::symplectic::{SymplecticElement, SymplecticSpace};

/// Enumeration limits sized so everything runs at desk scale.
pub const G_MAX: usize = 6;
pub const G_ORBIT: usize = 4;
pub const G_WITNESS: usize = 3;

pub const DEFAULT_WITNESS_SEED: u64 = 0;
pub const DEFAULT_WITNESS_ATTEMPTS: usize = 10_000;
const MAX_WITNESS_WORD_LEN: usize = 20;

/// The 2^{2g} spin structures split by Arf invariant.
#[derive(Clone, Debug)]
pub struct SpinPartition {
    pub g: usize,
    pub bounding: Vec<QuadraticRefinement>,
    pub unbounding: Vec<QuadraticRefinement>,
}

/// Brute-force enumeration of all refinements, partitioned by Arf.
pub fn enumerate_spin(g: usize) -> Result<SpinPartition> {
    if g < 1 || g > G_MAX {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            max: G_MAX,
        });
    }
    let mut bounding = Vec::new();
    let mut unbounding = Vec::new();
    for form in all_refinements(g) {
        if form.arf() {
            unbounding.push(form);
        } else {
            bounding.push(form);
        }
    }
    Ok(SpinPartition {
        g,
        bounding,
        unbounding,
    })
}

/// Closed form (2^{2g-1} + 2^{g-1}, 2^{2g-1} - 2^{g-1}).
pub fn count_formula(g: usize) -> (BigUint, BigUint) {
    assert!(g >= 1);
    let half = BigUint::from(1u32) << (2 * g - 1);
    let quarter = BigUint::from(1u32) << (g - 1);
    (&half + &quarter, &half - &quarter)
}

/// The sequence from (3, 1) under (b, u) -> (3b + u, 3u + b).
pub fn count_recurrence(g_max: usize) -> Vec<(BigUint, BigUint)> {
    assert!(g_max >= 1);
    let mut out = Vec::with_capacity(g_max);
    let mut b = BigUint::from(3u32);
    let mut u = BigUint::from(1u32);
    out.push((b.clone(), u.clone()));
    for _ in 1..g_max {
        let next_b = 3u32 * &b + &u;
        let next_u = 3u32 * &u + &b;
        b = next_b;
        u = next_u;
        out.push((b.clone(), u.clone()));
    }
    out
}

/// BFS closure of {q} under pullback by all transvections.
pub fn spin_orbit(g: usize, q: &QuadraticRefinement) -> Result<OrbitResult<QuadraticRefinement>> {
    spin_orbit_with_budget(g, q, DEFAULT_STATE_BUDGET)
}

pub fn spin_orbit_with_budget(
    g: usize,
    q: &QuadraticRefinement,
    budget: usize,
) -> Result<OrbitResult<QuadraticRefinement>> {
    if g < 1 || g > G_ORBIT {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            max: G_ORBIT,
        });
    }
    if q.genus() != g {
        return Err(Error::DimensionMismatch {
            expected: 2 * g,
            got: 2 * q.genus(),
        });
    }
    let generators = SymplecticSpace::new(g).transvection_generators();
    orbit_closure(
        std::slice::from_ref(q),
        generators.len(),
        |i, form: &QuadraticRefinement| form.pullback(&generators[i]).unwrap(),
        budget,
        true,
    )
}

/// An explicit M with pullback(q1, M) = q2; requires equal Arf.
pub fn transitivity_witness(
    q1: &QuadraticRefinement,
    q2: &QuadraticRefinement,
) -> Result<SymplecticElement> {
    if q1.genus() != q2.genus() {
        return Err(Error::DimensionMismatch {
            expected: 2 * q1.genus(),
            got: 2 * q2.genus(),
        });
    }
    if q1.arf() != q2.arf() {
        return Err(Error::ArfMismatch);
    }
    // q1 = pullback(s, M1), q2 = pullback(s, M2): the right-action law
    // gives pullback(q1, M1^{-1} M2) = q2.
    let (m1, _) = q1.reduce_to_standard();
    let (m2, _) = q2.reduce_to_standard();
    let witness = m1.inverse().mul(&m2)?;
    debug_assert_eq!(q1.pullback(&witness).unwrap(), *q2);
    Ok(witness)
}

#[derive(Clone, Debug)]
pub struct NoExtensionWitness {
    pub g: usize,
    pub element: SymplecticElement,
    /// Seed of the randomized search; absent for the exhaustive g=1 case.
    pub seed: Option<u64>,
    pub attempts: usize,
}

/// An element of Sp(2g, Z2) fixing no bounding spin structure.
///
/// Exhaustive at g = 1 (in canonical matrix order); seeded products of at
/// most 20 random transvections otherwise, each verified against every
/// bounding form before being returned.
pub fn no_extension_witness(g: usize, seed: u64, attempts: usize) -> Result<NoExtensionWitness> {
    if g < 1 || g > G_WITNESS {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            max: G_WITNESS,
        });
    }
    let space = SymplecticSpace::new(g);
    let bounding = enumerate_spin(g)?.bounding;
    let fixes_none = |m: &SymplecticElement| {
        bounding
            .iter()
            .all(|q| q.pullback(m).unwrap() != *q)
    };
    if g == 1 {
        let gens: Vec<crate::f2::F2Mat> = space
            .transvection_generators()
            .into_iter()
            .map(|t| t.matrix().clone())
            .collect();
        let mut elements = crate::group::matrix_group_closure(&gens, 1 << 10)?;
        elements.sort();
        for (i, mat) in elements.into_iter().enumerate() {
            let element = SymplecticElement::new(space, mat)?;
            if fixes_none(&element) {
                return Ok(NoExtensionWitness {
                    g,
                    element,
                    seed: None,
                    attempts: i + 1,
                });
            }
        }
        return Err(Error::SearchExhausted(6));
    }
    let generators = space.transvection_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=attempts {
        let len = rng.gen_range(1..=MAX_WITNESS_WORD_LEN);
        let mut m = SymplecticElement::identity(space);
        for _ in 0..len {
            m = m.mul(&generators[rng.gen_range(0..generators.len())])?;
        }
        if fixes_none(&m) {
            return Ok(NoExtensionWitness {
                g,
                element: m,
                seed: Some(seed),
                attempts: attempt,
            });
        }
    }
    Err(Error::SearchExhausted(attempts))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingBound {
    pub b: BigUint,
    pub order: BigUint,
    pub lhs: BigUint,
    pub ok: bool,
}

/// The stabilizer-union bound b_g (|Gamma| / b_g - 1) + 1 < |Gamma|,
/// with |Gamma| computed from generators.
pub fn counting_bound_check(g: usize) -> Result<CountingBound> {
    if g < 1 || g > G_WITNESS {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            max: G_WITNESS,
        });
    }
    let (b, _) = count_formula(g);
    let order = SymplecticSpace::new(g).group_order();
    // orbit-stabilizer: the bounding orbit size must divide the group order
    if &order % &b != BigUint::from(0u32) {
        return Err(Error::BadDecomposition(
            "bounding count does not divide the group order".into(),
        ));
    }
    let stabilizer = &order / &b;
    let lhs = &b * (&stabilizer - 1u32) + 1u32;
    let ok = lhs < order;
    Ok(CountingBound { b, order, lhs, ok })
}

/// Size of q's orbit: b_g for Arf 0 (the embedding-relevant case, since
/// induced structures are null spin-cobordant), u_g for Arf 1.
pub fn index_lower_bound_surface(q: &QuadraticRefinement) -> BigUint {
    let (b, u) = count_formula(q.genus());
    if q.arf() {
        u
    } else {
        b
    }
}

/// Convenience seed for orbit commands: the Arf-0 standard form.
pub fn bounding_seed(g: usize) -> QuadraticRefinement {
    QuadraticRefinement::standard_form(g, false)
}

/// Parses a 2g-bit refinement and checks the genus when one is given.
pub fn parse_form(bits: &str, expected_g: Option<usize>) -> Result<QuadraticRefinement> {
    let form = QuadraticRefinement::from_bit_string(bits)?;
    if let Some(g) = expected_g {
        if form.genus() != g {
            return Err(Error::DimensionMismatch {
                expected: 2 * g,
                got: bits.len(),
            });
        }
    }
    Ok(form)
}
