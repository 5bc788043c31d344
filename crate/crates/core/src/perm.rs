//! Permutations and a deterministic Schreier-Sims stabilizer chain.
//!
//! The chain is always completed deterministically (every Schreier generator
//! is sifted); group orders reported from it are genuinely computed, never
//! assumed from catalog metadata.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    pub fn from_images(img: Vec<u32>) -> Perm {
        debug_assert!({
            let mut seen = vec![false; img.len()];
            img.iter().all(|&x| {
                let ok = (x as usize) < img.len() && !seen[x as usize];
                if ok {
                    seen[x as usize] = true;
                }
                ok
            })
        });
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// (self . other)(x) = self(other(x)): `other` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm { img: out }
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.img.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn order(&self) -> u128 {
        let mut p = self.clone();
        let mut o = 1u128;
        while !p.is_identity() {
            p = p.compose(self);
            o += 1;
        }
        o
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            cycles.push(len);
        }
        cycles.sort_unstable();
        cycles
    }

    pub fn key(&self) -> &[u32] {
        &self.img
    }
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    transversal: HashMap<usize, Perm>,
    /// high-water marks of processed (orbit index, gen index) Schreier pairs
    processed: Vec<usize>, // per orbit position: number of gens already handled
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            processed: vec![0],
        }
    }

    /// Extend the orbit with the current generator set, keeping existing
    /// transversal representatives untouched so earlier sift results stay
    /// valid.
    fn extend_orbit(&mut self) {
        let mut frontier: Vec<usize> = self.orbit.clone();
        while let Some(p) = frontier.pop() {
            for g in &self.gens {
                let q = g.apply(p);
                if !self.transversal.contains_key(&q) {
                    let rep = g.compose(&self.transversal[&p]);
                    self.transversal.insert(q, rep);
                    self.orbit.push(q);
                    self.processed.push(0);
                    frontier.push(q);
                }
            }
        }
    }
}

/// Base and strong generating set for a permutation group, built by the
/// deterministic Schreier-Sims algorithm.
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(degree: usize, gens: &[Perm]) -> Bsgs {
        Bsgs::with_forced_base(degree, gens, &[])
    }

    /// Build with a prescribed initial base segment. Forced points are kept
    /// even when their orbits are trivial, which makes pointwise stabilizers
    /// directly readable off the chain.
    pub fn with_forced_base(degree: usize, gens: &[Perm], forced: &[usize]) -> Bsgs {
        let mut b = Bsgs { degree, levels: Vec::new() };
        for &p in forced {
            b.levels.push(Level::new(p, degree));
        }
        for g in gens {
            if !g.is_identity() {
                b.insert_gen(0, g.clone(), forced);
            }
        }
        b
    }

    /// Like `new`, but drops generators already contained in the chain built
    /// so far. Same group, far fewer Schreier pairs when the input list is
    /// long and redundant (rotation inventories, normal closures).
    pub fn new_filtered(degree: usize, gens: &[Perm]) -> Bsgs {
        let mut selected: Vec<Perm> = Vec::new();
        let mut chain = Bsgs::new(degree, &[]);
        for g in gens {
            if g.is_identity() || chain.contains(g) {
                continue;
            }
            selected.push(g.clone());
            chain = Bsgs::new(degree, &selected);
        }
        chain
    }

    fn insert_gen(&mut self, level: usize, g: Perm, forced: &[usize]) {
        // S_level must hold every generator of the level's group, including
        // those fixing the level's own base point: orbit closure needs them
        if level == self.levels.len() {
            let point = g.first_moved().expect("identity filtered earlier");
            self.levels.push(Level::new(point, self.degree));
        }
        self.levels[level].gens.push(g);
        self.process(level, forced);
    }

    fn process(&mut self, level: usize, forced: &[usize]) {
        loop {
            self.levels[level].extend_orbit();
            let mut new_residue: Option<Perm> = None;
            {
                let lv = &mut self.levels[level];
                'scan: for oi in 0..lv.orbit.len() {
                    let done = lv.processed[oi];
                    if done >= lv.gens.len() {
                        continue;
                    }
                    let p = lv.orbit[oi];
                    for gi in done..lv.gens.len() {
                        let s = lv.gens[gi].clone();
                        let q = s.apply(p);
                        let u_p = lv.transversal[&p].clone();
                        let u_q_inv = lv.transversal[&q].inverse();
                        let schreier = u_q_inv.compose(&s).compose(&u_p);
                        lv.processed[oi] = gi + 1;
                        if !schreier.is_identity() {
                            new_residue = Some(schreier);
                            break 'scan;
                        }
                    }
                }
            }
            match new_residue {
                None => return,
                Some(h) => {
                    let residue = self.sift_from(level + 1, h);
                    if !residue.is_identity() {
                        self.insert_gen(level + 1, residue, forced);
                    }
                }
            }
        }
    }

    fn sift_from(&self, start: usize, mut g: Perm) -> Perm {
        for lv in &self.levels[start..] {
            let p = g.apply(lv.point);
            match lv.transversal.get(&p) {
                None => return g,
                Some(u) => g = u.inverse().compose(&g),
            }
        }
        g
    }

    pub fn sift(&self, g: &Perm) -> Perm {
        self.sift_from(0, g.clone())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.sift(g).is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.levels[k..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Iterate over all group elements, each exactly once, as transversal
    /// products. Deterministic order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_len(&self, level: usize) -> usize {
        self.levels[level].orbit.len()
    }

    pub fn transversal_at(&self, level: usize, orbit_index: usize) -> &Perm {
        let lv = &self.levels[level];
        &lv.transversal[&lv.orbit[orbit_index]]
    }
}

pub struct ElementIter<'a> {
    bsgs: &'a Bsgs,
    /// per level: next orbit index to emit
    counters: Vec<usize>,
    /// prefix[i] = product of transversal reps for levels 0..=i
    prefix: Vec<Perm>,
    done: bool,
    emitted_identity_only: bool,
}

impl<'a> ElementIter<'a> {
    fn new(bsgs: &'a Bsgs) -> ElementIter<'a> {
        let k = bsgs.levels.len();
        ElementIter {
            bsgs,
            counters: vec![0; k],
            prefix: Vec::with_capacity(k),
            done: false,
            emitted_identity_only: k == 0,
        }
    }

    fn rebuild_prefix_from(&mut self, level: usize) {
        self.prefix.truncate(level);
        for i in level..self.bsgs.levels.len() {
            let u = self.bsgs.transversal_at(i, self.counters[i]);
            let p = match self.prefix.last() {
                Some(pre) => pre.compose(u),
                None => u.clone(),
            };
            self.prefix.push(p);
        }
    }
}

impl<'a> Iterator for ElementIter<'a> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        if self.bsgs.levels.is_empty() {
            // trivial group
            self.done = true;
            if self.emitted_identity_only {
                return Some(Perm::identity(self.bsgs.degree));
            }
            return None;
        }
        if self.prefix.is_empty() {
            self.rebuild_prefix_from(0);
        } else {
            // advance the deepest counter; carry upward
            let k = self.bsgs.levels.len();
            let mut i = k;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                self.counters[i] += 1;
                if self.counters[i] < self.bsgs.levels[i].orbit.len() {
                    break;
                }
                self.counters[i] = 0;
            }
            self.rebuild_prefix_from(i);
        }
        Some(self.prefix.last().unwrap().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, cyc: &[&[usize]]) -> Perm {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cyc {
            for w in 0..c.len() {
                img[c[w]] = c[(w + 1) % c.len()] as u32;
            }
        }
        Perm::from_images(img)
    }

    #[test]
    fn symmetric_group_order() {
        for n in 2..=7 {
            let gens: Vec<Perm> = (0..n - 1).map(|i| cycle(n, &[&[i, i + 1]])).collect();
            let bsgs = Bsgs::new(n, &gens);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(bsgs.order(), fact);
        }
    }

    #[test]
    fn membership_and_sift() {
        let g1 = cycle(5, &[&[0, 1, 2, 3, 4]]);
        let g2 = cycle(5, &[&[0, 1]]);
        let bsgs = Bsgs::new(5, &[g1.clone(), g2.clone()]);
        assert_eq!(bsgs.order(), 120);
        assert!(bsgs.contains(&g1.compose(&g2)));
        // A5 does not contain a transposition
        let a5 = Bsgs::new(5, &[cycle(5, &[&[0, 1, 2]]), cycle(5, &[&[2, 3, 4]])]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&g2));
    }

    #[test]
    fn psl27_order_and_elements() {
        // H7 generators from the monomial catalog, 0-indexed
        let g1 = cycle(7, &[&[0, 1], &[2, 3]]);
        let g2 = cycle(7, &[&[0, 4], &[1, 5]]);
        let g3 = cycle(7, &[&[0, 2], &[4, 6]]);
        let bsgs = Bsgs::new(7, &[g1, g2, g3]);
        assert_eq!(bsgs.order(), 168);
        let all: Vec<Perm> = bsgs.elements().collect();
        assert_eq!(all.len(), 168);
        let uniq: std::collections::HashSet<Vec<u32>> =
            all.iter().map(|p| p.key().to_vec()).collect();
        assert_eq!(uniq.len(), 168);
    }

    #[test]
    fn forced_base_stabilizer() {
        let g1 = cycle(4, &[&[0, 1, 2, 3]]);
        let g2 = cycle(4, &[&[0, 1]]);
        let bsgs = Bsgs::with_forced_base(4, &[g1, g2], &[0]);
        assert_eq!(bsgs.order(), 24);
        let stab = bsgs.stabilizer_gens(1);
        let sb = Bsgs::new(4, &stab);
        assert_eq!(sb.order(), 6); // S3 on the remaining points
        assert!(sb.strong_generators().iter().all(|g| g.apply(0) == 0));
    }

    #[test]
    fn trivial_group() {
        let bsgs = Bsgs::new(3, &[Perm::identity(3)]);
        assert_eq!(bsgs.order(), 1);
        assert_eq!(bsgs.elements().count(), 1);
    }
}
