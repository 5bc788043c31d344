//! Structural analysis: element classification, rotation/reflection
//! inventories, generation checks, plane systems, commutants and irreducible
//! components, quotient Coxeter systems, isotropy verification and
//! imprimitivity tests.
//!
//! Codimension is always measured in the full ambient space. A pointwise
//! fixed summand enlarges every fixed subspace by the same amount, so the
//! reflection/rotation classification is unaffected by non-essential
//! realizations; `ambient_codim_invariance` in the tests pins this down.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{
    canonical_subspace, subspace_contained, subspace_key, CycloMatrix, CycloVector,
};
use crate::matgroup::{element_cap, MatrixGroup};
use crate::perm::{Bsgs, Perm};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Identity,
    Reflection,
    Rotation,
    Other,
}

#[derive(Clone, Debug)]
pub struct ElementClass {
    pub fixed_dim: usize,
    pub codim: usize,
    pub det: i8,
    pub order: u128,
    pub kind: ElementKind,
}

/// Classify one orthogonal element by the codimension of its fixed subspace.
pub fn classify_element(g: &CycloMatrix) -> Result<ElementClass> {
    if !g.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let dim = g.rows;
    let fixed_dim = g.fixed_dim();
    let codim = dim - fixed_dim;
    let det = if g.det() == Cyclo::one() { 1i8 } else { -1 };
    let mut order = 1u128;
    let mut acc = g.clone();
    while !acc.is_identity() {
        acc = acc.mul(g);
        order += 1;
        if order > 10_000 {
            return Err(Error::InvalidConstruction("element order exceeds 10^4".into()));
        }
    }
    let kind = match codim {
        0 => ElementKind::Identity,
        1 => {
            debug_assert!(det == -1 && order == 2);
            ElementKind::Reflection
        }
        2 => {
            debug_assert!(det == 1);
            ElementKind::Rotation
        }
        _ => ElementKind::Other,
    };
    Ok(ElementClass { fixed_dim, codim, det, order, kind })
}

pub struct Inventory {
    pub reflections: Vec<CycloMatrix>,
    pub rotations: Vec<CycloMatrix>,
    /// rotation order -> count
    pub rotation_orders: BTreeMap<u128, usize>,
    pub order: u128,
}

/// Complete reflection and rotation lists by streaming the element set.
pub fn inventory(g: &MatrixGroup, cap: u128) -> Result<Inventory> {
    let order = g.order()?;
    if order > cap {
        return Err(Error::EnumerationCapExceeded(cap));
    }
    let image = g.perm_image()?;
    let fast = image.rational_points();
    let mut iter = g.element_perm_iter(cap)?;
    let mut reflections = Vec::new();
    let mut rotations = Vec::new();
    let mut rotation_orders: BTreeMap<u128, usize> = BTreeMap::new();
    while let Some(p) = iter.next_perm() {
        let codim = match fast {
            Some(rp) => g.dim - image.fixed_dim_fast(&p, g.dim, rp),
            None => g.dim - iter.matrix_of(&p).fixed_dim(),
        };
        if codim == 1 {
            reflections.push(iter.matrix_of(&p));
        } else if codim == 2 {
            *rotation_orders.entry(p.order()).or_insert(0) += 1;
            rotations.push(iter.matrix_of(&p));
        }
    }
    Ok(Inventory { reflections, rotations, rotation_orders, order })
}

pub fn generated_by_rotations(g: &MatrixGroup, inv: &Inventory) -> Result<bool> {
    if inv.rotations.is_empty() {
        return Ok(inv.order == 1);
    }
    Ok(g.generated_order(&inv.rotations)? == inv.order)
}

pub fn generated_by_reflections_and_rotations(g: &MatrixGroup, inv: &Inventory) -> Result<bool> {
    let mut gens = inv.rotations.clone();
    gens.extend(inv.reflections.iter().cloned());
    if gens.is_empty() {
        return Ok(inv.order == 1);
    }
    Ok(g.generated_order(&gens)? == inv.order)
}

/// Plane system: the (-1)-eigenplanes of the involutive rotations,
/// canonicalized, and checked to be closed under each plane's half-turn.
pub struct PlaneSystem {
    pub planes: Vec<Vec<CycloVector>>,
}

pub fn plane_system(g: &MatrixGroup, inv: &Inventory) -> Result<PlaneSystem> {
    let mut planes = Vec::new();
    let mut keys = std::collections::HashSet::new();
    let mut rot_list = Vec::new();
    for r in &inv.rotations {
        if !r.mul(r).is_identity() {
            continue;
        }
        // (-1)-eigenplane = kernel of r + I
        let ker = r.add(&CycloMatrix::identity(g.dim)).kernel();
        let plane = canonical_subspace(&ker);
        let key = subspace_key(&plane);
        if keys.insert(key) {
            planes.push(plane);
            rot_list.push(r.clone());
        }
    }
    // closure: r_sigma maps every plane of the system to a plane of the
    // system; a failure here is an engine bug, not a data condition
    for r in &rot_list {
        for p in &planes {
            let image: Vec<CycloVector> = p.iter().map(|v| r.apply(v)).collect();
            let k = subspace_key(&image);
            if !keys.contains(&k) {
                return Err(Error::InvalidConstruction(
                    "plane system not closed under its half-turns".into(),
                ));
            }
        }
    }
    Ok(PlaneSystem { planes })
}

/// Dimension of the commutant algebra {X : AX = XA for all generators}.
pub fn commutant_dimension(g: &MatrixGroup) -> usize {
    commutant_kernel(&g.generators, g.dim).len()
}

/// Basis of the commutant of a matrix list.
fn commutant_kernel(mats: &[CycloMatrix], n: usize) -> Vec<CycloMatrix> {
    let vars = n * n;
    let big = CycloMatrix::from_fn(mats.len() * vars, vars, |row, col| {
        let (xk, xl) = (col / n, col % n);
        let a = &mats[row / vars];
        let r = row % vars;
        let (i, j) = (r / n, r % n);
        // (AX - XA)_{ij}: coefficient of X_{kl}
        let mut c = Cyclo::zero();
        if xl == j {
            c = c.add(a.at(i, xk));
        }
        if xk == i {
            c = c.sub(a.at(xl, j));
        }
        c
    });
    big.kernel()
        .into_iter()
        .map(|v| CycloMatrix::from_fn(n, n, |i, j| v.entries[i * n + j].clone()))
        .collect()
}

/// Linear span of the orbit of v: the smallest invariant subspace containing
/// v. Computed by saturating the span, not the orbit, so it stays cheap even
/// in huge groups.
pub fn spin_span(g: &MatrixGroup, v: &CycloVector, _cap: usize) -> Result<Vec<CycloVector>> {
    let mut basis = canonical_subspace(&[v.clone()]);
    loop {
        let mut all = basis.clone();
        for b in &basis {
            for gen in &g.generators {
                all.push(gen.apply(b));
            }
        }
        let next = canonical_subspace(&all);
        if next.len() == basis.len() {
            return Ok(next);
        }
        basis = next;
    }
}

pub struct Components {
    /// canonical bases of the irreducible components, sorted by (dim, key)
    pub components: Vec<Vec<CycloVector>>,
    /// basis of the pointwise-fixed (trivial) summand
    pub trivial: Vec<CycloVector>,
}

/// Orthogonal decomposition into minimal invariant subspaces plus the
/// pointwise-fixed summand. Candidate seeds are projections of basis vectors
/// and their pairwise sums/differences; each found component is certified
/// minimal by a scalar symmetric commutant on restriction, otherwise the
/// decomposition is rejected.
pub fn irreducible_components(g: &MatrixGroup) -> Result<Components> {
    let dim = g.dim;
    let trivial = canonical_subspace(&g.fixed_subspace());
    let mut found: Vec<Vec<CycloVector>> = Vec::new();
    loop {
        let mut used: Vec<CycloVector> = trivial.clone();
        for c in &found {
            used.extend(c.iter().cloned());
        }
        if used.len() == dim {
            break;
        }
        // orthogonal projection onto the complement of `used`
        let compl_proj = if used.is_empty() {
            CycloMatrix::identity(dim)
        } else {
            let p = crate::linalg::projection_onto(&used);
            CycloMatrix::identity(dim).sub(&p)
        };
        let mut candidates: Vec<CycloVector> = Vec::new();
        for i in 0..dim {
            candidates.push(CycloVector::basis(dim, i));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                let a = CycloVector::basis(dim, i);
                let b = CycloVector::basis(dim, j);
                candidates.push(a.add(&b));
                candidates.push(a.sub(&b));
            }
        }
        let mut best: Option<Vec<CycloVector>> = None;
        for cand in &candidates {
            let seed = compl_proj.apply(cand);
            if seed.is_zero() {
                continue;
            }
            let span = spin_span(g, &seed, 2_000_000)?;
            match &best {
                Some(b) if b.len() <= span.len() => {}
                _ => best = Some(span),
            }
            if best.as_ref().unwrap().len() == 1 {
                break;
            }
        }
        let comp =
            best.ok_or_else(|| Error::InvalidConstruction("no invariant seed found".into()))?;
        found.push(comp);
    }
    // certify minimality: the symmetric commutant of the restriction to each
    // component must be scalar
    for comp in &found {
        if !component_is_irreducible(g, comp)? {
            return Err(Error::InvalidConstruction(
                "spin-span decomposition produced a non-minimal component".into(),
            ));
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then(subspace_key(a).cmp(&subspace_key(b))));
    Ok(Components { components: found, trivial })
}

/// A subspace basis is an irreducible component iff the restricted action
/// admits only scalar self-adjoint commutant elements. Self-adjointness is
/// taken with respect to the restricted Gram form: the restriction basis is
/// not orthonormal, so the adjoint of X is Gram^-1 X^T Gram.
fn component_is_irreducible(g: &MatrixGroup, comp: &[CycloVector]) -> Result<bool> {
    let k = comp.len();
    if k == 1 {
        return Ok(true);
    }
    let dim = g.dim;
    let b = CycloMatrix::from_fn(dim, k, |i, j| comp[j].entries[i].clone());
    let bt = b.transpose();
    let gram = bt.mul(&b);
    let gram_inv = gram.inverse()?;
    let mut restricted: Vec<CycloMatrix> = Vec::new();
    for gen in &g.generators {
        restricted.push(gram_inv.mul(&bt).mul(&gen.mul(&b)));
    }
    // unknowns X_{kl}: commutant equations plus Gram X = X^T Gram
    let vars = k * k;
    let rows = restricted.len() * vars + vars;
    let big = CycloMatrix::from_fn(rows, vars, |row, col| {
        let (xk, xl) = (col / k, col % k);
        if row < restricted.len() * vars {
            let a = &restricted[row / vars];
            let r = row % vars;
            let (i, j) = (r / k, r % k);
            let mut c = Cyclo::zero();
            if xl == j {
                c = c.add(a.at(i, xk));
            }
            if xk == i {
                c = c.sub(a.at(xl, j));
            }
            c
        } else {
            // (Gram X - X^T Gram)_{ij} = sum_a Gram_{ia} X_{aj} - X_{ai} Gram_{aj}
            let r = row - restricted.len() * vars;
            let (i, j) = (r / k, r % k);
            let mut c = Cyclo::zero();
            if xl == j {
                c = c.add(gram.at(i, xk));
            }
            if xl == i {
                c = c.sub(gram.at(xk, j));
            }
            c
        }
    });
    Ok(big.kernel().len() == 1)
}

/// Does the commutant contain a complex structure? Detected through the
/// skew parts of the commutant basis: a skew commuting J with J^2 a negative
/// scalar rescales to J^2 = -I.
pub fn preserves_complex_structure(g: &MatrixGroup) -> bool {
    let basis = commutant_kernel(&g.generators, g.dim);
    for x in &basis {
        let skew = x.sub(&x.transpose());
        if skew.entries().iter().all(|e| e.is_zero()) {
            continue;
        }
        let sq = skew.mul(&skew);
        if let Some(c) = sq.at(0, 0).as_rational() {
            if c < num_rational::BigRational::new(0.into(), 1.into())
                && sq == CycloMatrix::identity(g.dim).scale(&Cyclo::from_rational(c))
            {
                return true;
            }
        }
    }
    false
}

/// Coxeter diagram: vertex count and labeled edges (label >= 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl CoxeterDiagram {
    /// Isomorphism test by brute-force vertex permutation; diagrams here
    /// have at most 8 vertices.
    pub fn isomorphic(&self, other: &CoxeterDiagram) -> bool {
        if self.vertices != other.vertices || self.edges.len() != other.edges.len() {
            return false;
        }
        let norm = |edges: &[(usize, usize, u32)]| -> std::collections::HashSet<(usize, usize, u32)> {
            edges
                .iter()
                .map(|&(a, b, m)| (a.min(b), a.max(b), m))
                .collect()
        };
        let target = norm(&other.edges);
        let mut perm: Vec<usize> = (0..self.vertices).collect();
        // Heap's algorithm over small vertex counts
        fn heaps(
            k: usize,
            perm: &mut Vec<usize>,
            edges: &[(usize, usize, u32)],
            target: &std::collections::HashSet<(usize, usize, u32)>,
        ) -> bool {
            if k == 1 {
                return edges.iter().all(|&(a, b, m)| {
                    let (x, y) = (perm[a], perm[b]);
                    target.contains(&(x.min(y), x.max(y), m))
                });
            }
            for i in 0..k {
                if heaps(k - 1, perm, edges, target) {
                    return true;
                }
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
            false
        }
        heaps(self.vertices, &mut perm, &self.edges, &target)
    }

    /// Label-invariant canonical form: the lexicographically smallest edge
    /// list over all vertex relabelings.
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize, u32)>) {
        let mut best: Option<Vec<(usize, usize, u32)>> = None;
        let mut perm: Vec<usize> = (0..self.vertices).collect();
        fn visit(
            k: usize,
            perm: &mut Vec<usize>,
            edges: &[(usize, usize, u32)],
            best: &mut Option<Vec<(usize, usize, u32)>>,
        ) {
            if k == 1 {
                let mut relabeled: Vec<(usize, usize, u32)> = edges
                    .iter()
                    .map(|&(a, b, m)| {
                        let (x, y) = (perm[a], perm[b]);
                        (x.min(y), x.max(y), m)
                    })
                    .collect();
                relabeled.sort();
                if best.is_none() || relabeled < *best.as_ref().unwrap() {
                    *best = Some(relabeled);
                }
                return;
            }
            for i in 0..k {
                visit(k - 1, perm, edges, best);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        if self.vertices == 0 {
            return (0, Vec::new());
        }
        visit(self.vertices, &mut perm, &self.edges, &mut best);
        (self.vertices, best.unwrap_or_default())
    }

    /// Order of the Coxeter group with this diagram, when every connected
    /// component is of type A_n or I_2(m); that covers every quotient
    /// diagram in the classification.
    pub fn coxeter_order(&self) -> Option<u128> {
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.vertices];
        for &(a, b, m) in &self.edges {
            adj[a].push((b, m));
            adj[b].push((a, m));
        }
        let mut seen = vec![false; self.vertices];
        let mut order = 1u128;
        for s in 0..self.vertices {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            let internal: Vec<u32> = self
                .edges
                .iter()
                .filter(|(a, b, _)| comp.contains(a) && comp.contains(b))
                .map(|&(_, _, m)| m)
                .collect();
            let n = comp.len();
            if internal.is_empty() && n == 1 {
                order *= 2;
            } else if internal.len() == n - 1 && internal.iter().all(|&m| m == 3) {
                // type A_n
                order *= (1..=(n as u128 + 1)).product::<u128>();
            } else if n == 2 && internal.len() == 1 {
                order *= 2 * internal[0] as u128;
            } else {
                return None;
            }
        }
        Some(order)
    }
}

pub struct QuotientCoxeter {
    /// merged generator classes: indices into the original simple list
    pub classes: Vec<Vec<usize>>,
    pub matrix: Vec<Vec<u32>>,
    pub diagram: CoxeterDiagram,
    pub index: u128,
}

/// Quotient Coxeter system of G/H on the images of the given simple
/// reflections. H must be normal in G.
pub fn quotient_coxeter(
    g: &MatrixGroup,
    h: &MatrixGroup,
    simple: &[CycloMatrix],
) -> Result<QuotientCoxeter> {
    // verify normality: conjugates of H generators by G generators stay in H
    for x in &g.generators {
        let xi = x.inverse()?;
        for s in &h.generators {
            if !h.contains(&x.mul(s).mul(&xi))? {
                return Err(Error::NotNormal);
            }
        }
    }
    let index = g.order()? / h.order()?;
    // merge simple reflections into H-cosets
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<&CycloMatrix> = Vec::new();
    'outer: for (i, s) in simple.iter().enumerate() {
        for (c, rep) in reps.iter().enumerate() {
            if h.contains(&s.mul(rep))? {
                classes[c].push(i);
                continue 'outer;
            }
        }
        reps.push(s);
        classes.push(vec![i]);
    }
    let k = reps.len();
    let mut matrix = vec![vec![1u32; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let p = reps[a].mul(reps[b]);
            let mut acc = p.clone();
            let mut ord = 1u32;
            while !h.contains(&acc)? {
                acc = acc.mul(&p);
                ord += 1;
                if ord > 10_000 {
                    return Err(Error::InvalidConstruction("coset order exceeds bound".into()));
                }
            }
            matrix[a][b] = ord;
            matrix[b][a] = ord;
        }
    }
    let edges: Vec<(usize, usize, u32)> = (0..k)
        .flat_map(|a| {
            let matrix = &matrix;
            (a + 1..k).filter_map(move |b| {
                if matrix[a][b] >= 3 {
                    Some((a, b, matrix[a][b]))
                } else {
                    None
                }
            })
        })
        .collect();
    let diagram = CoxeterDiagram { vertices: k, edges };
    Ok(QuotientCoxeter { classes, matrix, diagram, index })
}

/// For each conjugacy-class representative g: is g a product of reflections
/// and rotations whose fixed subspaces contain Fix(g)? Returns the failing
/// representatives.
pub fn isotropy_rotation_check(g: &MatrixGroup, cap: u128) -> Result<(bool, Vec<CycloMatrix>)> {
    let inv = inventory(g, cap)?;
    let image = g.perm_image()?;
    let mut small: Vec<(Perm, Vec<CycloVector>)> = Vec::new();
    for m in inv.reflections.iter().chain(inv.rotations.iter()) {
        let p = image.induced_perm(m).ok_or(Error::NotAPointPermutation)?;
        let fix = canonical_subspace(&m.sub(&CycloMatrix::identity(g.dim)).kernel());
        small.push((p, fix));
    }
    let mut failures = Vec::new();
    let mut subgroup_cache: HashMap<Vec<u8>, Bsgs> = HashMap::new();
    let order = g.order()?;
    // elements with trivial fixed space constrain no isotropy group of a
    // nonzero point; the full group's own generation property is a separate
    // check
    let mut process =
        |m: CycloMatrix, cache: &mut HashMap<Vec<u8>, Bsgs>, failures: &mut Vec<CycloMatrix>| -> Result<()> {
            if m.is_identity() {
                return Ok(());
            }
            let fix = canonical_subspace(&m.sub(&CycloMatrix::identity(g.dim)).kernel());
            if fix.is_empty() {
                return Ok(());
            }
            let key = subspace_key(&fix);
            if !cache.contains_key(&key) {
                let gens: Vec<Perm> = small
                    .iter()
                    .filter(|(_, rfix)| subspace_contained(&fix, rfix))
                    .map(|(p, _)| p.clone())
                    .collect();
                cache.insert(key.clone(), Bsgs::new_filtered(image.points.len(), &gens));
            }
            let chain = &cache[&key];
            let p = image.induced_perm(&m).ok_or(Error::NotAPointPermutation)?;
            if !chain.contains(&p) {
                failures.push(m);
            }
            Ok(())
        };
    if order <= 100_000 {
        for (e, _) in g.conjugacy_class_reps(cap)? {
            process(e.matrix, &mut subgroup_cache, &mut failures)?;
        }
    } else {
        // stream a sound superset of class representatives: every element
        // with a nonzero fixed space
        let fast = image.rational_points();
        let mut iter = g.element_perm_iter(cap)?;
        while let Some(p) = iter.next_perm() {
            if p.is_identity() {
                continue;
            }
            let fixed = match fast {
                Some(rp) => image.fixed_dim_fast(&p, g.dim, rp),
                None => iter.matrix_of(&p).fixed_dim(),
            };
            if fixed > 0 {
                process(iter.matrix_of(&p), &mut subgroup_cache, &mut failures)?;
            }
        }
    }
    Ok((failures.is_empty(), failures))
}

/// Does every generator permute the given pairwise-orthogonal spanning
/// blocks?
pub fn verify_imprimitivity(g: &MatrixGroup, blocks: &[Vec<CycloVector>]) -> Result<bool> {
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    if total != g.dim {
        return Err(Error::InvalidConstruction("blocks do not span".into()));
    }
    let keys: Vec<Vec<u8>> = blocks.iter().map(|b| subspace_key(b)).collect();
    for gen in &g.generators {
        for b in blocks {
            let image: Vec<CycloVector> = b.iter().map(|v| gen.apply(v)).collect();
            let k = subspace_key(&image);
            if !keys.contains(&k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monomial = every generator maps coordinate lines to coordinate lines.
pub fn is_monomial(g: &MatrixGroup) -> bool {
    g.generators.iter().all(|m| {
        (0..g.dim).all(|j| {
            let nonzero = (0..g.dim).filter(|&i| !m.at(i, j).is_zero()).count();
            nonzero == 1
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoDimRotationType {
    /// rotation inside a single block
    Type1,
    /// swaps two blocks, transfer map of determinant +1
    Type2,
    /// two invariant blocks carrying reflections
    Type3,
    /// swaps two blocks, transfer map of determinant -1
    Type4,
}

/// Classify every rotation of an imprimitive group with 2-dim blocks into
/// the four shapes.
pub fn rotation_types_2dim(
    g: &MatrixGroup,
    blocks: &[Vec<CycloVector>],
    inv: &Inventory,
) -> Result<BTreeMap<TwoDimRotationType, usize>> {
    if !verify_imprimitivity(g, blocks)? {
        return Err(Error::InvalidConstruction("blocks are not a system of imprimitivity".into()));
    }
    if blocks.iter().any(|b| b.len() != 2) {
        return Err(Error::InvalidConstruction("blocks must be 2-dimensional".into()));
    }
    let mut out: BTreeMap<TwoDimRotationType, usize> = BTreeMap::new();
    for r in &inv.rotations {
        let t = classify_one_rotation(g, blocks, r)?;
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

fn classify_one_rotation(
    g: &MatrixGroup,
    blocks: &[Vec<CycloVector>],
    r: &CycloMatrix,
) -> Result<TwoDimRotationType> {
    // which blocks are touched nontrivially, and where does each go?
    let keys: Vec<Vec<u8>> = blocks.iter().map(|b| subspace_key(b)).collect();
    let mut moved: Vec<(usize, usize)> = Vec::new(); // (from, to)
    for (bi, b) in blocks.iter().enumerate() {
        let image: Vec<CycloVector> = b.iter().map(|v| r.apply(v)).collect();
        let k = subspace_key(&image);
        let to = keys.iter().position(|kk| kk == &k).ok_or_else(|| {
            Error::InvalidConstruction("rotation does not permute the blocks".into())
        })?;
        let identical = bi == to && b.iter().all(|v| &r.apply(v) == v);
        if !identical {
            moved.push((bi, to));
        }
    }
    // transfer map determinant between blocks a -> b
    let transfer_det = |a: usize, b: usize| -> Result<Cyclo> {
        let ba = CycloMatrix::from_fn(g.dim, 2, |i, j| blocks[a][j].entries[i].clone());
        let bb = CycloMatrix::from_fn(g.dim, 2, |i, j| blocks[b][j].entries[i].clone());
        let bt = bb.transpose();
        let gram_inv = bt.mul(&bb).inverse()?;
        let q = gram_inv.mul(&bt).mul(&r.mul(&ba));
        Ok(q.det())
    };
    match moved.len() {
        1 => {
            let (a, b) = moved[0];
            if a == b && transfer_det(a, a)? == Cyclo::one() {
                Ok(TwoDimRotationType::Type1)
            } else {
                Err(Error::InvalidConstruction("rotation fits no 2-dim type".into()))
            }
        }
        2 => {
            let (a, ta) = moved[0];
            let (b, tb) = moved[1];
            if ta == b && tb == a {
                // swap
                let d = transfer_det(a, b)?;
                if d == Cyclo::one() {
                    Ok(TwoDimRotationType::Type2)
                } else {
                    Ok(TwoDimRotationType::Type4)
                }
            } else if ta == a && tb == b {
                let (da, db) = (transfer_det(a, a)?, transfer_det(b, b)?);
                if da == Cyclo::from_int(-1) && db == Cyclo::from_int(-1) {
                    Ok(TwoDimRotationType::Type3)
                } else {
                    Err(Error::InvalidConstruction("rotation fits no 2-dim type".into()))
                }
            } else {
                Err(Error::InvalidConstruction("rotation fits no 2-dim type".into()))
            }
        }
        _ => Err(Error::InvalidConstruction("rotation fits no 2-dim type".into())),
    }
}

/// Coordinate-pair blocks (z_j realification) for a 2n-dimensional group.
pub fn coordinate_pair_blocks(dim: usize) -> Vec<Vec<CycloVector>> {
    (0..dim / 2)
        .map(|b| vec![CycloVector::basis(dim, 2 * b), CycloVector::basis(dim, 2 * b + 1)])
        .collect()
}

/// Coordinate lines as 1-dim blocks.
pub fn coordinate_line_blocks(dim: usize) -> Vec<Vec<CycloVector>> {
    (0..dim).map(|i| vec![CycloVector::basis(dim, i)]).collect()
}

/// Summary report of a group's structure, serialized by the CLI.
pub struct AnalysisReport {
    pub order: u128,
    pub reflections: usize,
    pub rotations: usize,
    pub rotation_orders: BTreeMap<u128, usize>,
    pub commutant_dim: usize,
    pub components: Vec<usize>,
    pub checks: BTreeMap<String, bool>,
}

pub fn analyze(g: &MatrixGroup) -> Result<AnalysisReport> {
    let inv = inventory(g, element_cap())?;
    let comps = irreducible_components(g)?;
    let mut checks = BTreeMap::new();
    checks.insert("generated_by_rotations".into(), generated_by_rotations(g, &inv)?);
    checks.insert(
        "generated_by_reflections_and_rotations".into(),
        generated_by_reflections_and_rotations(g, &inv)?,
    );
    if let Some(expected) = g.expected_order {
        checks.insert("order_matches_expected".into(), inv.order == expected);
    }
    let mut dims: Vec<usize> = comps.components.iter().map(|c| c.len()).collect();
    if !comps.trivial.is_empty() {
        dims.push(comps.trivial.len());
    }
    Ok(AnalysisReport {
        order: inv.order,
        reflections: inv.reflections.len(),
        rotations: inv.rotations.len(),
        rotation_orders: inv.rotation_orders.clone(),
        commutant_dim: commutant_dimension(g),
        components: dims,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::coxeter::{coxeter_group, orientation_subgroup, CoxType};
    use crate::catalog::monomial::{ibar_matrix, perm_matrix};

    #[test]
    fn classify_basic_elements() {
        let t = perm_matrix(3, &[&[0, 1]]);
        let c = classify_element(&t).unwrap();
        assert_eq!(c.kind, ElementKind::Reflection);
        assert_eq!(c.det, -1);
        let cyc = perm_matrix(3, &[&[0, 1, 2]]);
        let c = classify_element(&cyc).unwrap();
        assert_eq!(c.kind, ElementKind::Rotation);
        assert_eq!(c.order, 3);
        let g5 = ibar_matrix(7, &[(0, 1), (2, 3)]);
        let c = classify_element(&g5).unwrap();
        assert_eq!(c.kind, ElementKind::Rotation);
        assert_eq!((c.order, c.fixed_dim), (2, 5));
    }

    #[test]
    fn ambient_codim_invariance() {
        // the same transposition in its essential 2-dim realization and
        // inside R^3 classifies identically
        let t3 = perm_matrix(3, &[&[0, 1]]);
        let amb = classify_element(&t3).unwrap();
        assert_eq!(amb.kind, ElementKind::Reflection);
        // append another trivial summand
        let t4 = CycloMatrix::block_diag(&[t3, CycloMatrix::identity(1)]);
        let c = classify_element(&t4).unwrap();
        assert_eq!(c.kind, ElementKind::Reflection);
    }

    #[test]
    fn bc3_inventory() {
        let w = coxeter_group(&[CoxType::BC(3)]).unwrap().group;
        let inv = inventory(&w, 1000).unwrap();
        assert_eq!(inv.reflections.len(), 9);
        assert!(generated_by_reflections_and_rotations(&w, &inv).unwrap());
        let plus = orientation_subgroup(&w).unwrap();
        let invp = inventory(&plus, 1000).unwrap();
        assert_eq!(invp.reflections.len(), 0);
        assert!(generated_by_rotations(&plus, &invp).unwrap());
    }

    #[test]
    fn w_a2_components_and_commutant() {
        let w = coxeter_group(&[CoxType::A(2)]).unwrap().group;
        assert_eq!(commutant_dimension(&w), 2);
        let c = irreducible_components(&w).unwrap();
        assert_eq!(c.trivial.len(), 1);
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].len(), 2);
    }

    #[test]
    fn quotient_of_w_by_wplus_is_a1() {
        let real = coxeter_group(&[CoxType::BC(3)]).unwrap();
        let plus = orientation_subgroup(&real.group).unwrap();
        let q = quotient_coxeter(&real.group, &plus, &real.group.generators).unwrap();
        assert_eq!(q.index, 2);
        assert_eq!(q.diagram.vertices, 1);
        assert!(q.diagram.edges.is_empty());
    }

    #[test]
    fn bc3_isotropy_check() {
        let w = coxeter_group(&[CoxType::BC(3)]).unwrap().group;
        let (ok, fails) = isotropy_rotation_check(&w, 1000).unwrap();
        assert!(ok, "failures: {}", fails.len());
    }

    #[test]
    fn monomial_detection() {
        let w = coxeter_group(&[CoxType::BC(3)]).unwrap().group;
        assert!(is_monomial(&w));
        let h3 = coxeter_group(&[CoxType::H3]).unwrap().group;
        assert!(!is_monomial(&h3));
    }

    #[test]
    fn diagram_iso_and_order() {
        let a2xa1 = CoxeterDiagram { vertices: 3, edges: vec![(0, 1, 3)] };
        let same = CoxeterDiagram { vertices: 3, edges: vec![(2, 1, 3)] };
        assert!(a2xa1.isomorphic(&same));
        assert_eq!(a2xa1.coxeter_order(), Some(12));
        let i25 = CoxeterDiagram { vertices: 2, edges: vec![(0, 1, 5)] };
        assert_eq!(i25.coxeter_order(), Some(10));
        assert!(!i25.isomorphic(&a2xa1));
    }
}
