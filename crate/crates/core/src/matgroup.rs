//! Finite matrix-group engine: orbits, faithful permutation images, base and
//! strong generating sets, order, membership, element enumeration, conjugacy
//! classes, normal closures and pointwise stabilizers.
//!
//! A group is handed around as immutable generator matrices; the permutation
//! image on the union of basis-vector orbits is built once on demand and
//! cached. All vector comparisons are exact, so membership and orbit
//! deduplication never rely on floating point.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{CycloMatrix, CycloVector};
use crate::perm::{Bsgs, Perm};
use num_integer::Integer;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Orbit cap: points, not elements.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
/// Element enumeration cap.
pub const DEFAULT_ELEMENT_CAP: u128 = 10_000_000;

static ELEMENT_CAP: OnceLock<Mutex<u128>> = OnceLock::new();

fn element_cap_cell() -> &'static Mutex<u128> {
    ELEMENT_CAP.get_or_init(|| {
        let v = std::env::var("RRG_MAX_ELEMENTS")
            .ok()
            .and_then(|s| s.parse::<u128>().ok())
            .unwrap_or(DEFAULT_ELEMENT_CAP);
        Mutex::new(v)
    })
}

pub fn element_cap() -> u128 {
    *element_cap_cell().lock().unwrap()
}

pub fn set_element_cap(cap: u128) {
    *element_cap_cell().lock().unwrap() = cap;
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: CycloMatrix,
    pub word: Option<Vec<usize>>,
}

/// Permutation image of a matrix group on the union of the orbits of the
/// standard basis vectors (skipping vectors fixed by the whole group).
pub struct PermImage {
    pub points: Vec<CycloVector>,
    index: HashMap<Vec<u8>, usize>,
    pub perm_gens: Vec<Perm>,
    /// for each ambient coordinate, where e_i sits in the point list
    basis_pos: Vec<Option<usize>>,
    pub bsgs: Bsgs,
    rational: OnceLock<Option<RationalPoints>>,
}

/// Scaled integer coordinates of the point set, for groups whose points are
/// rational with small denominators. Feeds the exact integer fast path for
/// fixed-space dimensions during large enumerations.
pub struct RationalPoints {
    pub scale: i64,
    pub coords: Vec<Vec<i64>>,
}

/// Rank of a small integer matrix by fraction-free elimination in i128;
/// exact for the bounded entries produced by scaled orthogonal matrices.
pub fn integer_rank(mut m: Vec<i128>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                m.swap(row * cols + j, p * cols + j);
            }
        }
        let pivot = m[row * cols + col];
        for r in row + 1..rows {
            let factor = m[r * cols + col];
            if factor == 0 {
                continue;
            }
            for j in 0..cols {
                m[r * cols + j] = m[r * cols + j] * pivot - m[row * cols + j] * factor;
            }
            // keep entries small: divide the row by its gcd
            let mut g: i128 = 0;
            for j in 0..cols {
                g = num_integer::gcd(g, m[r * cols + j]);
            }
            if g > 1 {
                for j in 0..cols {
                    m[r * cols + j] /= g;
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

impl PermImage {
    fn point_of(&self, v: &CycloVector) -> Option<usize> {
        self.index.get(&v.key_bytes()).copied()
    }

    /// The permutation induced by an arbitrary matrix, if it maps the point
    /// set onto itself.
    pub fn induced_perm(&self, m: &CycloMatrix) -> Option<Perm> {
        let mut img = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let q = m.apply(p);
            img.push(self.point_of(&q)? as u32);
        }
        // bijectivity is automatic for invertible m once all images land
        Some(Perm::from_images(img))
    }

    /// Reconstruct the matrix of a group element from its permutation: column
    /// i is the image point of the basis vector e_i (or e_i itself when the
    /// whole group fixes it).
    pub fn matrix_of(&self, perm: &Perm, dim: usize) -> CycloMatrix {
        let cols: Vec<CycloVector> = (0..dim)
            .map(|i| match self.basis_pos[i] {
                Some(idx) => self.points[perm.apply(idx)].clone(),
                None => CycloVector::basis(dim, i),
            })
            .collect();
        CycloMatrix::from_fn(dim, dim, |r, c| cols[c].entries[r].clone())
    }

    /// Scaled integer point coordinates, when all point entries are rational
    /// with denominators fitting machine words.
    pub fn rational_points(&self) -> Option<&RationalPoints> {
        self.rational
            .get_or_init(|| {
                let mut scale: i64 = 1;
                for p in &self.points {
                    for e in &p.entries {
                        let q = e.as_rational()?;
                        let den: i64 = q.denom().try_into().ok()?;
                        scale = scale.checked_mul(den / num_integer::gcd(scale, den))?;
                        if scale > 1 << 20 {
                            return None;
                        }
                    }
                }
                let mut coords = Vec::with_capacity(self.points.len());
                for p in &self.points {
                    let mut row = Vec::with_capacity(p.entries.len());
                    for e in &p.entries {
                        let q = e.as_rational()?;
                        let num: i64 = q.numer().try_into().ok()?;
                        let den: i64 = q.denom().try_into().ok()?;
                        let v = num.checked_mul(scale / den)?;
                        if v.abs() > 1 << 24 {
                            return None;
                        }
                        row.push(v);
                    }
                    coords.push(row);
                }
                Some(RationalPoints { scale, coords })
            })
            .as_ref()
    }

    /// Fixed-space dimension of the element with this permutation, through
    /// the integer fast path. Exact; only available for rational point sets.
    pub fn fixed_dim_fast(&self, perm: &Perm, dim: usize, rp: &RationalPoints) -> usize {
        let mut m = vec![0i128; dim * dim];
        for i in 0..dim {
            match self.basis_pos[i] {
                Some(idx) => {
                    let col = &rp.coords[perm.apply(idx)];
                    for r in 0..dim {
                        m[r * dim + i] = col[r] as i128;
                    }
                }
                None => m[i * dim + i] = rp.scale as i128,
            }
        }
        for i in 0..dim {
            m[i * dim + i] -= rp.scale as i128;
        }
        dim - integer_rank(m, dim, dim)
    }
}

pub struct MatrixGroup {
    pub dim: usize,
    pub conductor: u32,
    pub generators: Vec<CycloMatrix>,
    pub name: Option<String>,
    /// catalog metadata used by verification suites; never trusted by the
    /// engine itself
    pub expected_order: Option<u128>,
    cache: OnceLock<Arc<PermImage>>,
}

impl MatrixGroup {
    pub fn new(dim: usize, generators: Vec<CycloMatrix>, name: Option<String>) -> Result<MatrixGroup> {
        if generators.is_empty() {
            return Err(Error::InvalidConstruction("a group needs at least one generator".into()));
        }
        let mut conductor = 1u32;
        for g in &generators {
            if g.rows != dim || g.cols != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, ambient dimension is {dim}",
                    g.rows, g.cols
                )));
            }
            if !g.is_orthogonal() {
                return Err(Error::NotOrthogonal);
            }
            conductor = conductor.lcm(&g.conductor);
        }
        let generators: Vec<CycloMatrix> =
            generators.into_iter().map(|g| g.promote(conductor)).collect();
        for g in &generators {
            let d = g.det();
            if d != Cyclo::one() && d != Cyclo::from_int(-1) {
                return Err(Error::InvalidConstruction("generator determinant is not +-1".into()));
            }
        }
        Ok(MatrixGroup { dim, conductor, generators, name, expected_order: None, cache: OnceLock::new() })
    }

    pub fn trivial(dim: usize) -> MatrixGroup {
        MatrixGroup::new(dim, vec![CycloMatrix::identity(dim)], Some("trivial".into())).unwrap()
    }

    pub fn with_expected_order(mut self, order: u128) -> MatrixGroup {
        self.expected_order = Some(order);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> MatrixGroup {
        self.name = Some(name.into());
        self
    }

    /// Dimension of the pointwise-fixed subspace of the whole group.
    pub fn fixed_subspace(&self) -> Vec<CycloVector> {
        let stacked = CycloMatrix::from_fn(self.dim * self.generators.len(), self.dim, |i, j| {
            let g = &self.generators[i / self.dim];
            let r = i % self.dim;
            let e = if r == j { Cyclo::one() } else { Cyclo::zero() };
            g.at(r, j).sub(&e)
        });
        stacked.kernel()
    }

    pub fn essential_dim(&self) -> usize {
        self.dim - self.fixed_subspace().len()
    }

    /// Orbit of a vector under the group, deduplicated by exact equality,
    /// in deterministic BFS order.
    pub fn orbit(&self, v: &CycloVector, cap: usize) -> Result<Vec<CycloVector>> {
        let n = self.conductor.lcm(&v.entries.iter().fold(1u32, |a, e| a.lcm(&e.conductor())));
        let gens: Vec<CycloMatrix> = self.generators.iter().map(|g| g.promote(n)).collect();
        let start = v.promote(n);
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut out = vec![start.clone()];
        seen.insert(start.key_bytes(), 0);
        let mut head = 0;
        while head < out.len() {
            let p = out[head].clone();
            head += 1;
            for g in &gens {
                let q = g.apply(&p);
                let k = q.key_bytes();
                if !seen.contains_key(&k) {
                    if out.len() >= cap {
                        return Err(Error::OrbitCapExceeded(cap));
                    }
                    seen.insert(k, out.len());
                    out.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Build (or fetch) the cached permutation image.
    pub fn perm_image(&self) -> Result<Arc<PermImage>> {
        if let Some(p) = self.cache.get() {
            return Ok(p.clone());
        }
        let built = self.build_perm_image(DEFAULT_ORBIT_CAP)?;
        Ok(self.cache.get_or_init(|| Arc::new(built)).clone())
    }

    fn build_perm_image(&self, cap: usize) -> Result<PermImage> {
        let fixed = self.fixed_subspace();
        let mut points: Vec<CycloVector> = Vec::new();
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut basis_pos = vec![None; self.dim];
        for i in 0..self.dim {
            let e = CycloVector::basis(self.dim, i).promote(self.conductor);
            if self.generators.iter().all(|g| g.apply(&e) == e) {
                // group-fixed direction: excluded from the point set
                continue;
            }
            let k = e.key_bytes();
            if index.contains_key(&k) {
                basis_pos[i] = Some(index[&k]);
                continue;
            }
            // BFS the orbit of e into the shared point list
            let mut frontier = vec![e.clone()];
            index.insert(k, points.len());
            basis_pos[i] = Some(points.len());
            points.push(e);
            while let Some(p) = frontier.pop() {
                for g in &self.generators {
                    let q = g.apply(&p);
                    let k = q.key_bytes();
                    if !index.contains_key(&k) {
                        if points.len() >= cap {
                            return Err(Error::OrbitCapExceeded(cap));
                        }
                        index.insert(k, points.len());
                        points.push(q.clone());
                        frontier.push(q);
                    }
                }
            }
        }
        // faithfulness: the points together with the fixed subspace must span
        let mut all: Vec<CycloVector> = points.clone();
        all.extend(fixed.iter().cloned());
        if !points.is_empty() {
            let m = CycloMatrix::from_fn(all.len(), self.dim, |i, j| all[i].entries[j].clone());
            if m.rank() != self.dim {
                return Err(Error::InvalidConstruction(
                    "point set does not span the essential subspace".into(),
                ));
            }
        }
        let perm_gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| {
                let mut img = Vec::with_capacity(points.len());
                for p in &points {
                    let q = g.apply(p);
                    img.push(index[&q.key_bytes()] as u32);
                }
                Perm::from_images(img)
            })
            .collect();
        let bsgs = Bsgs::new(points.len(), &perm_gens);
        Ok(PermImage { points, index, perm_gens, basis_pos, bsgs, rational: OnceLock::new() })
    }

    /// Exact group order.
    pub fn order(&self) -> Result<u128> {
        Ok(self.perm_image()?.bsgs.order())
    }

    /// Normalize a candidate matrix into this group's conductor, if its
    /// entries lie in the group's field at all.
    fn normalize_candidate(&self, g: &CycloMatrix) -> Option<CycloMatrix> {
        if g.conductor == self.conductor {
            return Some(g.clone());
        }
        if self.conductor % g.conductor == 0 {
            return Some(g.promote(self.conductor));
        }
        let mut entries = Vec::with_capacity(g.rows * g.cols);
        for e in g.entries() {
            let m = e.minimized();
            if self.conductor % m.conductor() != 0 {
                return None;
            }
            entries.push(m.promote(self.conductor));
        }
        Some(CycloMatrix::from_entries(g.rows, g.cols, entries))
    }

    /// Exact membership test.
    pub fn contains(&self, g: &CycloMatrix) -> Result<bool> {
        if g.rows != self.dim || g.cols != self.dim {
            return Err(Error::DimensionMismatch("membership test dimension mismatch".into()));
        }
        if !g.is_orthogonal() {
            return Err(Error::NotOrthogonal);
        }
        let Some(g) = self.normalize_candidate(g) else {
            return Ok(false);
        };
        let image = self.perm_image()?;
        match image.induced_perm(&g) {
            None => Ok(false),
            Some(p) => {
                if !image.bsgs.contains(&p) {
                    return Ok(false);
                }
                // the permutation action is faithful, but confirm the matrix
                // matches its reconstruction to rule out non-point behaviour
                Ok(image.matrix_of(&p, self.dim) == g)
            }
        }
    }

    /// Order of the subgroup generated by matrices already known to lie in
    /// the group.
    pub fn generated_order(&self, subset: &[CycloMatrix]) -> Result<u128> {
        Ok(self.subgroup_bsgs(subset)?.order())
    }

    /// BSGS of a subgroup given by member matrices, acting on this group's
    /// point set.
    pub fn subgroup_bsgs(&self, subset: &[CycloMatrix]) -> Result<Bsgs> {
        let image = self.perm_image()?;
        let mut perms = Vec::with_capacity(subset.len());
        for m in subset {
            if !self.contains(m)? {
                return Err(Error::NotAMember);
            }
            let g = self.normalize_candidate(m).ok_or(Error::NotAMember)?;
            perms.push(image.induced_perm(&g).ok_or(Error::NotAPointPermutation)?);
        }
        Ok(Bsgs::new_filtered(image.points.len(), &perms))
    }

    /// Stream every element exactly once. Matrices are materialized lazily
    /// from the permutation via basis-column lookup.
    pub fn elements(&self, cap: u128) -> Result<OwnedElementIter> {
        let it = self.element_perm_iter(cap)?;
        Ok(it)
    }

    /// Streaming iterator over (permutation, materialize-on-demand matrix).
    pub fn element_perm_iter(&self, cap: u128) -> Result<OwnedElementIter> {
        let image = self.perm_image()?;
        let order = image.bsgs.order();
        if order > cap {
            return Err(Error::EnumerationCapExceeded(cap));
        }
        Ok(OwnedElementIter::new(image, self.dim))
    }

    /// Stream element permutations only (fast path for counting work).
    pub fn element_perms(&self, cap: u128) -> Result<(Arc<PermImage>, Vec<Perm>)> {
        let image = self.perm_image()?;
        let order = image.bsgs.order();
        if order > cap {
            return Err(Error::EnumerationCapExceeded(cap));
        }
        let perms: Vec<Perm> = image.bsgs.elements().collect();
        Ok((image, perms))
    }

    /// One representative per conjugacy class, with class sizes.
    pub fn conjugacy_class_reps(&self, cap: u128) -> Result<Vec<(GroupElement, u128)>> {
        let (image, perms) = self.element_perms(cap)?;
        let mut pos: HashMap<Vec<u32>, usize> = HashMap::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            pos.insert(p.key().to_vec(), i);
        }
        let gen_invs: Vec<(Perm, Perm)> =
            image.perm_gens.iter().map(|g| (g.clone(), g.inverse())).collect();
        let mut seen = vec![false; perms.len()];
        let mut out = Vec::new();
        for start in 0..perms.len() {
            if seen[start] {
                continue;
            }
            // BFS the conjugation orbit
            let mut stack = vec![start];
            seen[start] = true;
            let mut size = 0u128;
            while let Some(i) = stack.pop() {
                size += 1;
                for (g, ginv) in &gen_invs {
                    let c = g.compose(&perms[i]).compose(ginv);
                    let j = pos[c.key()];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            out.push((
                GroupElement { matrix: image.matrix_of(&perms[start], self.dim), word: None },
                size,
            ));
        }
        Ok(out)
    }

    /// Smallest normal subgroup containing the given members.
    pub fn normal_closure(&self, subset: &[CycloMatrix]) -> Result<MatrixGroup> {
        if subset.is_empty() {
            return Ok(MatrixGroup::trivial(self.dim));
        }
        let image = self.perm_image()?;
        let mut closure_mats: Vec<CycloMatrix> = Vec::new();
        let mut closure_perms: Vec<Perm> = Vec::new();
        for m in subset {
            if !self.contains(m)? {
                return Err(Error::NotAMember);
            }
            let g = self.normalize_candidate(m).unwrap();
            closure_perms.push(image.induced_perm(&g).ok_or(Error::NotAPointPermutation)?);
            closure_mats.push(g);
        }
        let mut bsgs = Bsgs::new(image.points.len(), &closure_perms);
        let mut head = 0;
        while head < closure_mats.len() {
            let (cm, cp) = (closure_mats[head].clone(), closure_perms[head].clone());
            head += 1;
            for (g, gp) in self.generators.iter().zip(&image.perm_gens) {
                let conj_p = gp.compose(&cp).compose(&gp.inverse());
                if !bsgs.contains(&conj_p) {
                    let conj_m = g.mul(&cm).mul(&g.inverse()?);
                    closure_mats.push(conj_m);
                    closure_perms.push(conj_p);
                    bsgs = Bsgs::new(image.points.len(), &closure_perms);
                }
            }
        }
        let mut out = MatrixGroup::new(self.dim, closure_mats, None)?;
        out.name = self.name.as_ref().map(|n| format!("ncl in {n}"));
        Ok(out)
    }

    /// Subgroup fixing every vector of `fixed` pointwise.
    pub fn pointwise_stabilizer(&self, fixed: &[CycloVector]) -> Result<MatrixGroup> {
        if fixed.is_empty() {
            return MatrixGroup::new(self.dim, self.generators.clone(), self.name.clone());
        }
        let image = self.perm_image()?;
        let targets: Vec<Option<usize>> = fixed
            .iter()
            .map(|v| image.point_of(&v.promote(self.conductor)))
            .collect();
        if targets.iter().all(|t| t.is_some()) {
            let base: Vec<usize> = targets.into_iter().map(|t| t.unwrap()).collect();
            let chain = Bsgs::with_forced_base(
                image.points.len(),
                &image.perm_gens,
                &base,
            );
            let gens = chain.stabilizer_gens(base.len());
            if gens.is_empty() {
                return Ok(MatrixGroup::trivial(self.dim));
            }
            let mats: Vec<CycloMatrix> =
                gens.iter().map(|p| image.matrix_of(p, self.dim)).collect();
            return MatrixGroup::new(self.dim, mats, None);
        }
        // fallback: filter the element list
        let cap = element_cap();
        let mut mats = Vec::new();
        for el in self.elements(cap)? {
            if fixed.iter().all(|v| el.matrix.apply(v) == v.promote(el.matrix.conductor)) {
                mats.push(el.matrix);
            }
        }
        if mats.is_empty() {
            return Ok(MatrixGroup::trivial(self.dim));
        }
        MatrixGroup::new(self.dim, mats, None)
    }
}

/// Owning element iterator: walks the transversal product tree of the cached
/// BSGS without borrowing the group.
pub struct OwnedElementIter {
    image: Arc<PermImage>,
    dim: usize,
    counters: Vec<usize>,
    prefix: Vec<Perm>,
    started: bool,
    done: bool,
}

impl OwnedElementIter {
    fn new(image: Arc<PermImage>, dim: usize) -> OwnedElementIter {
        let k = image.bsgs.level_count();
        OwnedElementIter {
            image,
            dim,
            counters: vec![0; k],
            prefix: Vec::with_capacity(k),
            started: false,
            done: false,
        }
    }

    pub fn image(&self) -> &Arc<PermImage> {
        &self.image
    }

    fn rebuild_prefix_from(&mut self, level: usize) {
        self.prefix.truncate(level);
        for i in level..self.image.bsgs.level_count() {
            let u = self.image.bsgs.transversal_at(i, self.counters[i]);
            let p = match self.prefix.last() {
                Some(pre) => pre.compose(u),
                None => u.clone(),
            };
            self.prefix.push(p);
        }
    }

    /// The permutation of the current/next element, without materializing a
    /// matrix.
    pub fn next_perm(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let k = self.image.bsgs.level_count();
        if k == 0 {
            self.done = true;
            return Some(Perm::identity(self.image.points.len()));
        }
        if !self.started {
            self.started = true;
            self.rebuild_prefix_from(0);
        } else {
            let mut i = k;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                self.counters[i] += 1;
                if self.counters[i] < self.image.bsgs.orbit_len(i) {
                    break;
                }
                self.counters[i] = 0;
            }
            self.rebuild_prefix_from(i);
        }
        Some(self.prefix.last().unwrap().clone())
    }

    pub fn matrix_of(&self, p: &Perm) -> CycloMatrix {
        self.image.matrix_of(p, self.dim)
    }
}

impl Iterator for OwnedElementIter {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let p = self.next_perm()?;
        Some(GroupElement { matrix: self.image.matrix_of(&p, self.dim), word: None })
    }
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatrixGroup({}, dim {}, conductor {}, {} gens)",
            self.name.as_deref().unwrap_or("?"),
            self.dim,
            self.conductor,
            self.generators.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_matrix(n: usize, images: &[usize]) -> CycloMatrix {
        CycloMatrix::from_fn(n, n, |i, j| {
            if images[j] == i {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        })
    }

    fn sign_matrix(n: usize, flips: &[usize]) -> CycloMatrix {
        CycloMatrix::from_fn(n, n, |i, j| {
            if i != j {
                Cyclo::zero()
            } else if flips.contains(&i) {
                Cyclo::from_int(-1)
            } else {
                Cyclo::one()
            }
        })
    }

    fn w_bc3() -> MatrixGroup {
        MatrixGroup::new(
            3,
            vec![
                perm_matrix(3, &[1, 0, 2]),
                perm_matrix(3, &[0, 2, 1]),
                sign_matrix(3, &[2]),
            ],
            Some("W(BC3)".into()),
        )
        .unwrap()
    }

    #[test]
    fn orbit_of_e1_under_bc3() {
        let g = w_bc3();
        let orb = g.orbit(&CycloVector::basis(3, 0), 100).unwrap();
        assert_eq!(orb.len(), 6); // +-e1, +-e2, +-e3
    }

    #[test]
    fn trivial_group_orbit() {
        let t = MatrixGroup::trivial(4);
        let v = CycloVector::basis(4, 2);
        assert_eq!(t.orbit(&v, 10).unwrap(), vec![v]);
        assert_eq!(t.order().unwrap(), 1);
    }

    #[test]
    fn bc3_order_and_membership() {
        let g = w_bc3();
        assert_eq!(g.order().unwrap(), 48);
        let minus_id = sign_matrix(3, &[0, 1, 2]);
        assert!(g.contains(&minus_id).unwrap());
        // W(A2) as 3x3 permutation matrices does not contain -id
        let a2 = MatrixGroup::new(
            3,
            vec![perm_matrix(3, &[1, 0, 2]), perm_matrix(3, &[0, 2, 1])],
            Some("W(A2)".into()),
        )
        .unwrap();
        assert_eq!(a2.order().unwrap(), 6);
        assert!(!a2.contains(&minus_id).unwrap());
    }

    #[test]
    fn element_enumeration_matches_order() {
        let g = w_bc3();
        let els: Vec<GroupElement> = g.elements(1000).unwrap().collect();
        assert_eq!(els.len(), 48);
        // every materialized matrix is a group member and orthogonal
        for el in els.iter().take(8) {
            assert!(el.matrix.is_orthogonal());
            assert!(g.contains(&el.matrix).unwrap());
        }
        // determinants multiply along transversal products: product of all
        // dets is (+1 or -1) and each det is +-1
        for el in &els {
            let d = el.matrix.det();
            assert!(d == Cyclo::one() || d == Cyclo::from_int(-1));
        }
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let a2 = MatrixGroup::new(
            3,
            vec![perm_matrix(3, &[1, 0, 2]), perm_matrix(3, &[0, 2, 1])],
            None,
        )
        .unwrap();
        let mut sizes: Vec<u128> =
            a2.conjugacy_class_reps(100).unwrap().iter().map(|(_, s)| *s).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn normal_closure_of_transposition_in_s4() {
        let gens: Vec<CycloMatrix> = vec![
            perm_matrix(4, &[1, 0, 2, 3]),
            perm_matrix(4, &[0, 2, 1, 3]),
            perm_matrix(4, &[0, 1, 3, 2]),
        ];
        let s4 = MatrixGroup::new(4, gens.clone(), None).unwrap();
        let cl = s4.normal_closure(&[gens[0].clone()]).unwrap();
        assert_eq!(cl.order().unwrap(), 24);
        assert_eq!(s4.normal_closure(&[]).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn pointwise_stabilizers() {
        // stabilizer of e1 in W(BC2) has order 2
        let bc2 = MatrixGroup::new(
            2,
            vec![perm_matrix(2, &[1, 0]), sign_matrix(2, &[1])],
            None,
        )
        .unwrap();
        assert_eq!(bc2.order().unwrap(), 8);
        let st = bc2.pointwise_stabilizer(&[CycloVector::basis(2, 0)]).unwrap();
        assert_eq!(st.order().unwrap(), 2);
        // generic vector in W(A2): trivial stabilizer
        let a2 = MatrixGroup::new(
            3,
            vec![perm_matrix(3, &[1, 0, 2]), perm_matrix(3, &[0, 2, 1])],
            None,
        )
        .unwrap();
        let v = CycloVector::new(vec![
            Cyclo::from_int(1),
            Cyclo::from_int(2),
            Cyclo::from_int(5),
        ]);
        let st = a2.pointwise_stabilizer(&[v]).unwrap();
        assert_eq!(st.order().unwrap(), 1);
    }

    #[test]
    fn generated_order_divides_group_order() {
        let g = w_bc3();
        let sub = g.generated_order(&[g.generators[0].clone()]).unwrap();
        assert_eq!(sub, 2);
        let full = g.generated_order(&g.generators.clone()).unwrap();
        assert_eq!(full, 48);
        let outside = perm_matrix(3, &[2, 0, 1]); // 3-cycle, is in the group
        assert!(g.contains(&outside).unwrap());
    }
}

#[cfg(test)]
mod concurrency_tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn groups_are_shareable_across_threads() {
        assert_send_sync::<MatrixGroup>();
        assert_send_sync::<PermImage>();
        assert_send_sync::<crate::cyclo::Cyclo>();
        // the BSGS cache builds once and serves concurrent readers
        let g = std::sync::Arc::new(
            MatrixGroup::new(
                3,
                vec![
                    crate::catalog::monomial::perm_matrix(3, &[&[0, 1]]),
                    crate::catalog::monomial::perm_matrix(3, &[&[1, 2]]),
                    crate::catalog::monomial::sign_matrix(3, &[2]),
                ],
                None,
            )
            .unwrap(),
        );
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let g = g.clone();
                std::thread::spawn(move || g.order().unwrap())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 48);
        }
    }
}
