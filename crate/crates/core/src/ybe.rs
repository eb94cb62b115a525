//! Set-theoretic solutions of the Yang-Baxter equation attached to left braces.
//!
//! A solution on `X = {0..n}` is stored as two families of maps with
//! `r(x, y) = (σ_x(y), τ_y(x))`.

use rayon::prelude::*;

use crate::brace::FiniteBrace;
use crate::error::{BraceError, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSolution {
    size: usize,
    /// `sigma[x][y] = σ_x(y)`
    sigma: Vec<Vec<usize>>,
    /// `tau[y][x] = τ_y(x)`
    tau: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// Which family contains a non-bijective map, and its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Sigma(usize),
    Tau(usize),
}

impl SetSolution {
    /// Wraps raw map tables. Only shape is checked; the three solution
    /// properties are left to the `check_*` methods.
    pub fn from_maps(sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>) -> Result<Self> {
        let size = sigma.len();
        let well_formed = size > 0
            && tau.len() == size
            && sigma.iter().chain(&tau).all(|m| m.len() == size && m.iter().all(|&v| v < size));
        if !well_formed {
            return Err(BraceError::MalformedTable("solution maps must be n maps of 0..n into itself".into()));
        }
        Ok(SetSolution { size, sigma, tau, labels: None })
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(size: usize) -> Self {
        let id: Vec<usize> = (0..size).collect();
        SetSolution { size, sigma: vec![id.clone(); size], tau: vec![id; size], labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(BraceError::MalformedTable("one label per element required".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn sigma_images(&self, x: usize) -> &[usize] {
        &self.sigma[x]
    }

    pub fn tau_images(&self, y: usize) -> &[usize] {
        &self.tau[y]
    }

    pub fn sigma(&self, x: usize) -> Option<Perm> {
        Perm::from_images(self.sigma[x].clone())
    }

    pub fn tau(&self, y: usize) -> Option<Perm> {
        Perm::from_images(self.tau[y].clone())
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y], self.tau[y][x])
    }

    /// `(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r)`; returns the first failing triple.
    pub fn check_braid(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.size;
        let r12 = |(x, y, z): (usize, usize, usize)| {
            let (u, v) = self.apply(x, y);
            (u, v, z)
        };
        let r23 = |(x, y, z): (usize, usize, usize)| {
            let (u, v) = self.apply(y, z);
            (x, u, v)
        };
        let witness = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Some(t);
                    }
                }
            }
            None
        });
        witness.map_or(Ok(()), Err)
    }

    /// `r(r(x, y)) = (x, y)`; returns the first failing pair.
    pub fn check_involutive(&self) -> std::result::Result<(), (usize, usize)> {
        for x in 0..self.size {
            for y in 0..self.size {
                let (u, v) = self.apply(x, y);
                if self.apply(u, v) != (x, y) {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Every `σ_x` and `τ_y` is a bijection.
    pub fn check_nondegenerate(&self) -> std::result::Result<(), Degeneracy> {
        if let Some(x) = (0..self.size).find(|&x| !crate::perm::is_bijection(&self.sigma[x])) {
            return Err(Degeneracy::Sigma(x));
        }
        if let Some(y) = (0..self.size).find(|&y| !crate::perm::is_bijection(&self.tau[y])) {
            return Err(Degeneracy::Tau(y));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check_nondegenerate().is_ok() && self.check_involutive().is_ok() && self.check_braid().is_ok()
    }
}

/// `σ_x(y) = x·y + y`, `τ_y(x) = z·x + x` with `z` the adjoint inverse of `σ_x(y)`.
pub fn solution_from_brace(brace: &FiniteBrace) -> Result<SetSolution> {
    brace.require_left()?;
    let n = brace.order();
    let sigma: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| brace.add(brace.mul(x, y), y)).collect()).collect();
    let mut tau = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let z = brace.adjoint_inverse(sigma[x][y]);
            tau[y][x] = brace.add(brace.mul(z, x), x);
        }
    }
    SetSolution::from_maps(sigma, tau)
}

/// Identifies `x ~ y` when `σ_x = σ_y` and `τ_x = τ_y`. Classes are numbered
/// by first occurrence; returns the induced solution and the class map.
pub fn retract(sol: &SetSolution) -> Result<(SetSolution, Vec<usize>)> {
    let n = sol.size;
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        let found = reps.iter().position(|&r| sol.sigma[r] == sol.sigma[x] && sol.tau[r] == sol.tau[x]);
        class[x] = found.unwrap_or_else(|| {
            reps.push(x);
            reps.len() - 1
        });
    }
    let m = reps.len();
    let mut sigma = vec![vec![usize::MAX; m]; m];
    let mut tau = vec![vec![usize::MAX; m]; m];
    for x in 0..n {
        for y in 0..n {
            let (cx, cy) = (class[x], class[y]);
            for (cell, value) in [
                (&mut sigma[cx][cy], class[sol.sigma[x][y]]),
                (&mut tau[cy][cx], class[sol.tau[y][x]]),
            ] {
                if *cell == usize::MAX {
                    *cell = value;
                } else if *cell != value {
                    return Err(BraceError::InducedMapIllDefined(cx));
                }
            }
        }
    }
    let mut out = SetSolution::from_maps(sigma, tau)?;
    if let Some(labels) = &sol.labels {
        out.labels = Some(reps.iter().map(|&r| labels[r].clone()).collect());
    }
    Ok((out, class))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipermutationLevel {
    Level(usize),
    NotMultipermutation,
}

impl MultipermutationLevel {
    pub fn level(self) -> Option<usize> {
        match self {
            MultipermutationLevel::Level(m) => Some(m),
            MultipermutationLevel::NotMultipermutation => None,
        }
    }
}

impl std::fmt::Display for MultipermutationLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MultipermutationLevel::Level(m) => write!(f, "{m}"),
            MultipermutationLevel::NotMultipermutation => f.write_str("not multipermutation"),
        }
    }
}

/// Number of retractions needed to reach one point.
pub fn multipermutation_level(sol: &SetSolution) -> Result<MultipermutationLevel> {
    let mut current = sol.clone();
    let mut steps = 0;
    while current.size > 1 {
        let (next, _) = retract(&current)?;
        if next.size == current.size {
            return Ok(MultipermutationLevel::NotMultipermutation);
        }
        current = next;
        steps += 1;
    }
    Ok(MultipermutationLevel::Level(steps))
}

/// The braiding `σ(a, b) = (ᵃb, aᵇ)` of a left brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    order: usize,
    table: Vec<(usize, usize)>,
}

impl Braiding {
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        self.table[a * self.order + b]
    }

    /// `ᵃb = λ_a(b)`.
    pub fn left_action(&self, a: usize, b: usize) -> usize {
        self.apply(a, b).0
    }

    /// `aᵇ`.
    pub fn right_action(&self, a: usize, b: usize) -> usize {
        self.apply(a, b).1
    }
}

pub fn braiding_from_brace(brace: &FiniteBrace) -> Result<Braiding> {
    let sol = solution_from_brace(brace)?;
    let n = brace.order();
    let table = (0..n * n).map(|i| sol.apply(i / n, i % n)).collect();
    Ok(Braiding { order: n, table })
}

/// Checks `c ∘ ᵍc = ʰc ∘ ᵏc` for all triples, where `g = (a∘b∘c)⁻¹`,
/// `h = b⁻¹`, `k = (aᵇ ∘ ʰc)⁻¹`, `ˣc = λ_x(c)` and `aᵇ` is the right
/// component of the braiding. Returns the first failing triple.
pub fn check_two_sided_identity(brace: &FiniteBrace) -> Result<std::result::Result<(), (usize, usize, usize)>> {
    let braid = braiding_from_brace(brace)?;
    let lam = |x: usize, c: usize| braid.left_action(x, c);
    let inv = |x: usize| brace.adjoint_inverse(x);
    let circ = |x: usize, y: usize| brace.circle(x, y);
    for a in brace.elements() {
        for b in brace.elements() {
            let ab = circ(a, b);
            let a_b = braid.right_action(a, b);
            for c in brace.elements() {
                let lhs = circ(c, lam(inv(circ(ab, c)), c));
                let hc = lam(inv(b), c);
                let rhs = circ(hc, lam(inv(circ(a_b, hc)), c));
                if lhs != rhs {
                    return Ok(Err((a, b, c)));
                }
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;

    #[test]
    fn trivial_brace_gives_flip() {
        let b = FiniteBrace::trivial_cyclic(4);
        let sol = solution_from_brace(&b).unwrap();
        assert_eq!(sol, SetSolution::flip(4));
        assert!(sol.is_valid());
        assert_eq!(multipermutation_level(&sol).unwrap(), MultipermutationLevel::Level(1));
    }

    #[test]
    fn zero_pair_is_fixed() {
        let sol = solution_from_brace(&even_residues_mod_16()).unwrap();
        assert_eq!(sol.apply(0, 0), (0, 0));
        assert!(sol.is_valid());
    }

    #[test]
    fn identity_map_is_degenerate() {
        // r(x, y) = (x, y): σ_x is constant, so only non-degeneracy fails.
        let n = 3;
        let sigma = (0..n).map(|x| vec![x; n]).collect();
        let tau = (0..n).map(|y| vec![y; n]).collect();
        let sol = SetSolution::from_maps(sigma, tau).unwrap();
        assert!(sol.check_involutive().is_ok());
        assert!(sol.check_braid().is_ok());
        assert_eq!(sol.check_nondegenerate(), Err(Degeneracy::Sigma(0)));
    }

    #[test]
    fn corrupted_solution_fails_braid() {
        let sol = solution_from_brace(&even_residues_mod_16()).unwrap();
        let mut sigma: Vec<Vec<usize>> = (0..8).map(|x| sol.sigma_images(x).to_vec()).collect();
        let tau: Vec<Vec<usize>> = (0..8).map(|y| sol.tau_images(y).to_vec()).collect();
        sigma[3].swap(1, 2);
        let bad = SetSolution::from_maps(sigma, tau).unwrap();
        let (x, y, z) = bad.check_braid().unwrap_err();
        let lhs = {
            let (u, v) = bad.apply(x, y);
            let (v2, w) = bad.apply(v, z);
            let (u2, v3) = bad.apply(u, v2);
            (u2, v3, w)
        };
        let rhs = {
            let (v, w) = bad.apply(y, z);
            let (u, v2) = bad.apply(x, v);
            let (v3, w2) = bad.apply(v2, w);
            (u, v3, w2)
        };
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn retraction_of_flip_and_singleton() {
        let (r, class) = retract(&SetSolution::flip(5)).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(class, vec![0; 5]);
        let one = SetSolution::flip(1);
        assert_eq!(retract(&one).unwrap().0, one);
        assert_eq!(multipermutation_level(&one).unwrap(), MultipermutationLevel::Level(0));
    }

    #[test]
    fn labels_follow_representatives() {
        let sol = SetSolution::flip(3).with_labels(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let (r, _) = retract(&sol).unwrap();
        assert_eq!(r.labels().unwrap(), &["x".to_string()]);
    }

    #[test]
    fn braiding_of_trivial_brace_is_flip() {
        let br = braiding_from_brace(&FiniteBrace::trivial_cyclic(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(br.apply(a, b), (b, a));
            }
        }
    }

    #[test]
    fn two_sided_identity_on_ring_braces() {
        assert_eq!(check_two_sided_identity(&FiniteBrace::trivial_cyclic(4)).unwrap(), Ok(()));
        assert_eq!(check_two_sided_identity(&even_residues_mod_16()).unwrap(), Ok(()));
    }
}
