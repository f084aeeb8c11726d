//! Generic finite-action machinery: orbit closure under generators,
//! permutation-group enumeration, and the semidirect-product index check.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::f2::F2Mat;

pub const DEFAULT_STATE_BUDGET: usize = 1 << 24;
pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;

/// An enumerated orbit: canonically sorted points, plus optional
/// generator words reaching each point from the seed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult<S: Ord> {
    pub points: Vec<S>,
    pub size: usize,
    pub generator_count: usize,
    pub witness_words: Option<BTreeMap<S, Vec<usize>>>,
}

/// BFS closure of the seeds under `apply(gen_index, state)`.
///
/// The returned point list is sorted regardless of visit order. Witness
/// words record, per point, the generator indices applied to a seed in
/// order; seeds get the empty word.
pub fn orbit_closure<S, F>(
    seeds: &[S],
    generator_count: usize,
    apply: F,
    budget: usize,
    record_words: bool,
) -> Result<OrbitResult<S>>
where
    S: Clone + Ord + Hash,
    F: Fn(usize, &S) -> S,
{
    let mut words: HashMap<S, Vec<usize>> = HashMap::new();
    let mut queue: VecDeque<S> = VecDeque::new();
    for s in seeds {
        if !words.contains_key(s) {
            words.insert(s.clone(), Vec::new());
            queue.push_back(s.clone());
        }
    }
    while let Some(state) = queue.pop_front() {
        let word = words[&state].clone();
        for g in 0..generator_count {
            let next = apply(g, &state);
            if !words.contains_key(&next) {
                if words.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let mut next_word = word.clone();
                next_word.push(g);
                words.insert(next.clone(), next_word);
                queue.push_back(next);
            }
        }
    }
    let mut points: Vec<S> = words.keys().cloned().collect();
    points.sort();
    let size = points.len();
    Ok(OrbitResult {
        points,
        size,
        generator_count,
        witness_words: record_words.then(|| words.into_iter().collect()),
    })
}

/// Full element set of the matrix group generated by `generators`,
/// via closure under right multiplication.
pub fn matrix_group_closure(generators: &[F2Mat], budget: usize) -> Result<Vec<F2Mat>> {
    let n = generators.first().map_or(0, F2Mat::rows);
    let identity = F2Mat::identity(n);
    let orbit = orbit_closure(
        &[identity],
        generators.len(),
        |g, m: &F2Mat| m.mul(&generators[g]).unwrap(),
        budget,
        false,
    )?;
    Ok(orbit.points)
}

/// A permutation of {0..degree-1}, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::BadPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// (a.compose(b))(x) = a(b(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl PermGroupSpec {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermGroupSpec { degree, generators })
    }
}

/// All elements of the generated permutation group.
pub fn enumerate_group(spec: &PermGroupSpec, budget: usize) -> Result<BTreeSet<Perm>> {
    let orbit = orbit_closure(
        &[Perm::identity(spec.degree)],
        spec.generators.len(),
        |g, p: &Perm| p.compose(&spec.generators[g]),
        budget,
        false,
    )?;
    Ok(orbit.points.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub ok: bool,
}

/// Checks [ambient : G] <= [N : N meet G] * [H : H meet G] for a
/// decomposition ambient = N x| H, all indices by element counting.
///
/// Preconditions verified: every generator of N, H, G lies in ambient,
/// N is normal in ambient, N meet H is trivial, and |N| |H| = |ambient|.
pub fn semidirect_index_check(
    n: &PermGroupSpec,
    h: &PermGroupSpec,
    g: &PermGroupSpec,
    ambient: &PermGroupSpec,
    budget: usize,
) -> Result<SemidirectCheck> {
    let amb = enumerate_group(ambient, budget)?;
    let n_set = enumerate_group(n, budget)?;
    let h_set = enumerate_group(h, budget)?;
    let g_set = enumerate_group(g, budget)?;
    for (name, set) in [("N", &n_set), ("H", &h_set), ("G", &g_set)] {
        if !set.iter().all(|p| amb.contains(p)) {
            return Err(Error::BadDecomposition(format!(
                "{name} is not a subgroup of the ambient group"
            )));
        }
    }
    // N normal in ambient
    for a in &amb {
        let a_inv = a.inverse();
        for x in &n_set {
            if !n_set.contains(&a.compose(x).compose(&a_inv)) {
                return Err(Error::BadDecomposition("N is not normal".into()));
            }
        }
    }
    let meet: Vec<&Perm> = n_set.intersection(&h_set).collect();
    if meet.len() != 1 {
        return Err(Error::BadDecomposition("N meet H is not trivial".into()));
    }
    if n_set.len() * h_set.len() != amb.len() {
        return Err(Error::BadDecomposition(
            "|N| * |H| does not equal the ambient order".into(),
        ));
    }
    let lhs = amb.len() / g_set.len();
    let n_meet_g = n_set.intersection(&g_set).count();
    let h_meet_g = h_set.intersection(&g_set).count();
    let rhs = (n_set.len() / n_meet_g) * (h_set.len() / h_meet_g);
    Ok(SemidirectCheck {
        lhs,
        rhs,
        ok: lhs <= rhs,
    })
}

/// Every subgroup of the group generated by `spec`, by incremental
/// closure over the subgroup lattice. Intended for small groups only.
pub fn all_subgroups(spec: &PermGroupSpec, budget: usize) -> Result<Vec<BTreeSet<Perm>>> {
    let elements: Vec<Perm> = enumerate_group(spec, budget)?.into_iter().collect();
    let trivial: BTreeSet<Perm> = [Perm::identity(spec.degree)].into_iter().collect();
    let mut found: BTreeSet<BTreeSet<Perm>> = [trivial.clone()].into_iter().collect();
    let mut frontier = vec![trivial];
    while let Some(sub) = frontier.pop() {
        for extra in &elements {
            if sub.contains(extra) {
                continue;
            }
            let mut gens: Vec<Perm> = sub.iter().cloned().collect();
            gens.push(extra.clone());
            let bigger = enumerate_group(&PermGroupSpec::new(spec.degree, gens)?, budget)?;
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    Ok(found.into_iter().collect())
}
