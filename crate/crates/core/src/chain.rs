//! Deterministic Schreier–Sims.
//!
//! Basic orbits are built breadth-first with first-in-wins transversals.
//! Coset representatives (and their inverses) are stored explicitly,
//! which is the right trade for the degrees handled here (at most a few
//! thousand points).

use alloc::vec::Vec;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: u32,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// Position of a point in `orbit`, or `NONE`.
    pub pos: Vec<u32>,
    /// `reps[j]` maps `base_point` to `orbit[j]`.
    pub reps: Vec<Permutation>,
    pub reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut lvl = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            pos: Vec::new(),
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        lvl.rebuild_orbit(degree);
        lvl
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        let id = Permutation::identity(degree);
        self.orbit.clear();
        self.reps.clear();
        self.reps_inv.clear();
        self.pos = alloc::vec![NONE; degree];
        self.orbit.push(self.base_point);
        self.pos[self.base_point as usize] = 0;
        self.reps.push(id.clone());
        self.reps_inv.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for s in &self.gens {
                let y = s.image(x);
                if self.pos[y as usize] == NONE {
                    let rep = self.reps[head].compose(s);
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    #[inline]
    pub fn position(&self, x: u32) -> Option<usize> {
        let p = self.pos[x as usize];
        (p != NONE).then_some(p as usize)
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain whose base starts with `prefix` (those levels are
    /// kept even when their basic orbit is trivial).
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit.len() as u64).collect()
    }

    pub fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    /// Every strong generator, without duplicates across levels.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts `g` starting at level `from`. Returns `None` when `g` reduces to
    /// the identity, otherwise the residue and the level at which it stuck
    /// (`levels.len()` when every base point is fixed but the residue is not
    /// the identity).
    pub fn sift_from(&self, g: &Permutation, from: usize) -> Option<(Permutation, usize)> {
        let mut h = g.clone();
        for (j, lvl) in self.levels.iter().enumerate().skip(from) {
            let x = h.image(lvl.base_point);
            match lvl.position(x) {
                Some(a) => {
                    if a != 0 {
                        h.compose_assign(&lvl.reps_inv[a]);
                    }
                }
                None => return Some((h, j)),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.levels.len()))
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).is_none()
    }

    /// Adds a generator and restores the strong generating property.
    /// Returns false if `g` was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        let Some((h, j)) = self.sift_from(g, 0) else {
            return false;
        };
        self.insert_residue(h, 0, j);
        self.complete(j);
        true
    }

    fn insert_residue(&mut self, h: Permutation, from: usize, upto: usize) {
        if upto == self.levels.len() {
            let moved = h
                .images()
                .iter()
                .enumerate()
                .find(|(i, &x)| *i as u32 != x)
                .map(|(i, _)| i as u32)
                .expect("residue is not the identity");
            self.levels.push(Level::new(self.degree, moved));
        }
        for l in from..=upto {
            self.levels[l].gens.push(h.clone());
            self.levels[l].rebuild_orbit(self.degree);
        }
    }

    /// Holt's deterministic Schreier–Sims loop, starting from level `start`.
    /// Levels above `start` must already be complete.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_bad_schreier_generator(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    self.insert_residue(h, lvl + 1, j);
                    i = j as isize;
                }
            }
        }
    }

    fn find_bad_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for (a, &x) in level.orbit.iter().enumerate() {
            for s in &level.gens {
                let y = s.image(x);
                let b = level.pos[y as usize] as usize;
                let mut sg = level.reps[a].compose(s);
                if sg == level.reps[b] {
                    continue;
                }
                sg.compose_assign(&level.reps_inv[b]);
                if let Some(res) = self.sift_from(&sg, lvl + 1) {
                    return Some(res);
                }
            }
        }
        None
    }

    /// Mixed-radix index of a group element (level 0 most significant),
    /// computed from base images only. Returns `None` if some base image
    /// falls outside a basic orbit; does not otherwise verify membership.
    pub fn index_of<F: Fn(u32) -> u32>(&self, image: F) -> Option<u64> {
        let mut digits: Vec<usize> = Vec::with_capacity(self.levels.len());
        let mut idx = 0u64;
        for lvl in &self.levels {
            let mut x = image(lvl.base_point);
            for (l, &d) in digits.iter().enumerate() {
                if d != 0 {
                    x = self.levels[l].reps_inv[d].image(x);
                }
            }
            let d = lvl.position(x)?;
            digits.push(d);
            idx = idx * lvl.orbit.len() as u64 + d as u64;
        }
        Some(idx)
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element_at(&self, mut index: u64) -> Permutation {
        let mut digits = alloc::vec![0usize; self.levels.len()];
        for (i, lvl) in self.levels.iter().enumerate().rev() {
            let n = lvl.orbit.len() as u64;
            digits[i] = (index % n) as usize;
            index /= n;
        }
        let mut g = Permutation::identity(self.degree);
        for (i, lvl) in self.levels.iter().enumerate().rev() {
            if digits[i] != 0 {
                g.compose_assign(&lvl.reps[digits[i]]);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s4 = StabChain::new(4, &[p(4, "(1 2)"), p(4, "(1 2 3 4)")], &[]);
        assert_eq!(s4.order(), Some(24));
        let a5 = StabChain::new(5, &[p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")], &[]);
        assert_eq!(a5.order(), Some(60));
        assert!(!a5.contains(&p(5, "(1 2)")));
        assert!(a5.contains(&p(5, "(1 2)(3 4)")));
    }

    #[test]
    fn index_roundtrip() {
        let a5 = StabChain::new(5, &[p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")], &[]);
        for i in 0..60 {
            let g = a5.element_at(i);
            assert_eq!(a5.index_of(|x| g.image(x)), Some(i));
        }
    }

    #[test]
    fn prefix_is_respected() {
        let c = StabChain::new(6, &[p(6, "(1 2 3)(4 5 6)")], &[4, 0]);
        assert_eq!(c.base()[..2], [4, 0]);
        assert_eq!(c.order(), Some(3));
    }
}
