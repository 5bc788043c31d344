//! Assembly and decomposition of reducible reflection-rotation groups from
//! triple data: a family of triples (G_i, H_i, F_i), an equivalence relation
//! on the irreducible components of the product of the quotients G_i/H_i,
//! and reflection-preserving isomorphisms between paired nontrivial
//! components.
//!
//! The assembled group is generated by the H_i, by the rotations s t for
//! reflection cosets paired across components, and by the lone reflections of
//! unpaired trivial components. Decomposition recovers the data from the
//! normal closures of the first-kind rotations and of the reflections plus
//! second-kind rotations.

use crate::analysis::{inventory, quotient_coxeter, CoxeterDiagram, QuotientCoxeter};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{canonical_subspace, projection_onto, CycloMatrix, CycloVector};
use crate::matgroup::{element_cap, MatrixGroup};
use std::collections::{BTreeMap, HashMap, HashSet};

/// One irreducible factor of the data: groups realized in the shared ambient
/// space, acting only inside the component subspace.
pub struct TripleDatum {
    pub g: MatrixGroup,
    pub h: MatrixGroup,
    pub f: MatrixGroup,
    /// simple reflections generating F_i (empty for rotation-only triples)
    pub f_simple: Vec<CycloMatrix>,
    pub case_tag: Option<String>,
    pub expected_diagram: Option<CoxeterDiagram>,
}

pub type ComponentRef = (usize, usize); // (triple index, diagram component index)

pub struct IsoDatum {
    pub pair: (ComponentRef, ComponentRef),
    /// image reflections in the second triple, one per vertex of the first
    /// component (in vertex order)
    pub images: Vec<CycloMatrix>,
}

pub struct AssemblyData {
    pub dim: usize,
    pub triples: Vec<TripleDatum>,
    pub classes: Vec<Vec<ComponentRef>>,
    pub isos: Vec<IsoDatum>,
}

/// Per-triple quotient structure computed during validation.
pub struct TripleQuotient {
    pub quotient: QuotientCoxeter,
    /// connected components of the diagram, each a sorted list of vertices
    pub components: Vec<Vec<usize>>,
}

fn diagram_components(d: &CoxeterDiagram) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); d.vertices];
    for &(a, b, _) in &d.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; d.vertices];
    let mut out = Vec::new();
    for s in 0..d.vertices {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn is_trivial_component(d: &CoxeterDiagram, comp: &[usize]) -> bool {
    comp.len() == 1 && d.edges.iter().all(|&(a, b, _)| a != comp[0] && b != comp[0])
}

/// Sub-diagram induced on a component, vertices relabeled 0..k.
fn component_diagram(d: &CoxeterDiagram, comp: &[usize]) -> CoxeterDiagram {
    let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = d
        .edges
        .iter()
        .filter(|(a, b, _)| pos.contains_key(a) && pos.contains_key(b))
        .map(|&(a, b, m)| (pos[&a], pos[&b], m))
        .collect();
    CoxeterDiagram { vertices: comp.len(), edges }
}

impl AssemblyData {
    /// Compute the quotient Coxeter systems of every triple.
    pub fn triple_quotients(&self) -> Result<Vec<TripleQuotient>> {
        let mut out = Vec::new();
        for t in &self.triples {
            let quotient = quotient_coxeter(&t.g, &t.h, &t.f_simple)?;
            let components = diagram_components(&quotient.diagram);
            out.push(TripleQuotient { quotient, components });
        }
        Ok(out)
    }

    /// Full validity: per-triple structure plus the class conditions of the
    /// correspondence.
    pub fn validate(&self) -> Result<Vec<TripleQuotient>> {
        let quotients = self.triple_quotients()?;
        for (ti, t) in self.triples.iter().enumerate() {
            // F normal in G, all reflections of G land in F, G = <H, F>
            for x in &t.g.generators {
                let xi = x.inverse()?;
                for s in &t.f.generators {
                    if !t.f.contains(&x.mul(s).mul(&xi))? {
                        return Err(Error::InvalidAssembly(format!(
                            "triple {ti}: F is not normal in G"
                        )));
                    }
                }
            }
            let inv = inventory(&t.g, element_cap())?;
            for s in &inv.reflections {
                if !t.f.contains(s)? {
                    return Err(Error::InvalidAssembly(format!(
                        "triple {ti}: a reflection of G lies outside F"
                    )));
                }
            }
            let mut gens = t.h.generators.clone();
            gens.extend(t.f.generators.iter().cloned());
            if t.g.generated_order(&gens)? != t.g.order()? {
                return Err(Error::InvalidAssembly(format!("triple {ti}: G != <H, F>")));
            }
            if let Some(expect) = &t.expected_diagram {
                if !quotients[ti].quotient.diagram.isomorphic(expect) {
                    return Err(Error::InvalidAssembly(format!(
                        "triple {ti}: quotient diagram does not match the case tag"
                    )));
                }
            }
            // the quotient is a Coxeter system: its diagram order equals the
            // index whenever the diagram is within the supported shapes
            if let Some(o) = quotients[ti].quotient.diagram.coxeter_order() {
                if o != quotients[ti].quotient.index {
                    return Err(Error::InvalidAssembly(format!(
                        "triple {ti}: quotient order {} does not match its diagram ({})",
                        quotients[ti].quotient.index, o
                    )));
                }
            }
        }
        // class structure
        let mut seen: HashSet<ComponentRef> = HashSet::new();
        for class in &self.classes {
            if class.is_empty() {
                return Err(Error::InvalidAssembly("empty equivalence class".into()));
            }
            let mut triples_in_class = HashSet::new();
            for &(ti, ci) in class {
                if ti >= self.triples.len() || ci >= quotients[ti].components.len() {
                    return Err(Error::InvalidAssembly("class refers to a missing component".into()));
                }
                if !seen.insert((ti, ci)) {
                    return Err(Error::InvalidAssembly("component appears in two classes".into()));
                }
                if !triples_in_class.insert(ti) {
                    return Err(Error::InvalidAssembly(
                        "class members must belong to pairwise different quotients".into(),
                    ));
                }
            }
            let trivial: Vec<bool> = class
                .iter()
                .map(|&(ti, ci)| {
                    is_trivial_component(
                        &quotients[ti].quotient.diagram,
                        &quotients[ti].components[ci],
                    )
                })
                .collect();
            if trivial.iter().any(|t| *t) && !trivial.iter().all(|t| *t) {
                return Err(Error::InvalidAssembly(
                    "a class mixes trivial and nontrivial components".into(),
                ));
            }
            if !trivial[0] {
                if class.len() != 2 {
                    return Err(Error::InvalidAssembly(
                        "nontrivial classes contain precisely two components".into(),
                    ));
                }
                let d0 = component_diagram(
                    &quotients[class[0].0].quotient.diagram,
                    &quotients[class[0].0].components[class[0].1],
                );
                let d1 = component_diagram(
                    &quotients[class[1].0].quotient.diagram,
                    &quotients[class[1].0].components[class[1].1],
                );
                if !d0.isomorphic(&d1) {
                    return Err(Error::InvalidAssembly(
                        "paired components are not isomorphic".into(),
                    ));
                }
                let iso = self
                    .isos
                    .iter()
                    .find(|i| i.pair == (class[0], class[1]) || i.pair == (class[1], class[0]))
                    .ok_or_else(|| {
                        Error::InvalidAssembly("nontrivial class without an isomorphism".into())
                    })?;
                self.validate_iso(iso, &quotients)?;
            }
        }
        // every component of every quotient belongs to exactly one class
        for (ti, q) in quotients.iter().enumerate() {
            for ci in 0..q.components.len() {
                if !seen.contains(&(ti, ci)) {
                    return Err(Error::InvalidAssembly(format!(
                        "component ({ti},{ci}) belongs to no class"
                    )));
                }
            }
        }
        // at most one unpaired trivial component per quotient
        for ti in 0..self.triples.len() {
            let lone = self
                .classes
                .iter()
                .filter(|c| c.len() == 1 && c[0].0 == ti)
                .count();
            if lone > 1 {
                return Err(Error::InvalidAssembly(format!(
                    "quotient {ti} has more than one unpaired trivial component"
                )));
            }
        }
        Ok(quotients)
    }

    fn validate_iso(&self, iso: &IsoDatum, quotients: &[TripleQuotient]) -> Result<()> {
        let (a, b) = iso.pair;
        let (_ta, tb) = (&self.triples[a.0], &self.triples[b.0]);
        let qa = &quotients[a.0];
        let verts = &qa.components[a.1];
        if iso.images.len() != verts.len() {
            return Err(Error::InvalidAssembly("isomorphism image count mismatch".into()));
        }
        for img in &iso.images {
            if img.fixed_dim() != self.dim - 1 || !tb.f.contains(img)? {
                return Err(Error::InvalidAssembly(
                    "isomorphism image is not a reflection of the partner F".into(),
                ));
            }
        }
        // relation preservation: coset orders of pairwise products match
        for (x, &vx) in verts.iter().enumerate() {
            for (y, &vy) in verts.iter().enumerate().skip(x + 1) {
                let m_source = qa.quotient.matrix[vx][vy];
                let p = iso.images[x].mul(&iso.images[y]);
                let mut acc = p.clone();
                let mut ord = 1u32;
                while !tb.h.contains(&acc)? {
                    acc = acc.mul(&p);
                    ord += 1;
                    if ord > 10_000 {
                        return Err(Error::InvalidAssembly("iso image order diverges".into()));
                    }
                }
                if ord != m_source {
                    return Err(Error::InvalidAssembly(
                        "isomorphism does not preserve the Coxeter relations".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Representative reflection of one diagram vertex: the first simple
    /// reflection in the merged class.
    fn vertex_reflection(&self, quotients: &[TripleQuotient], r: ComponentRef, vertex: usize) -> CycloMatrix {
        let (ti, _) = r;
        let class = &quotients[ti].quotient.classes[vertex];
        self.triples[ti].f_simple[class[0]].clone()
    }

    /// Build the reflection-rotation group out of the data.
    pub fn assemble(&self) -> Result<MatrixGroup> {
        let quotients = self.validate()?;
        let mut gens: Vec<CycloMatrix> = Vec::new();
        for t in &self.triples {
            for h in &t.h.generators {
                if !h.is_identity() {
                    gens.push(h.clone());
                }
            }
        }
        for class in &self.classes {
            let first = class[0];
            let is_triv = is_trivial_component(
                &quotients[first.0].quotient.diagram,
                &quotients[first.0].components[first.1],
            );
            if is_triv {
                let reps: Vec<CycloMatrix> = class
                    .iter()
                    .map(|&(ti, ci)| {
                        let v = quotients[ti].components[ci][0];
                        self.vertex_reflection(&quotients, (ti, ci), v)
                    })
                    .collect();
                if reps.len() == 1 {
                    gens.push(reps[0].clone());
                } else {
                    for w in reps.windows(2) {
                        gens.push(w[0].mul(&w[1]));
                    }
                }
            } else {
                let iso = self
                    .isos
                    .iter()
                    .find(|i| i.pair == (class[0], class[1]) || i.pair == (class[1], class[0]))
                    .unwrap();
                let (a, _b) = iso.pair;
                let verts = quotients[a.0].components[a.1].clone();
                for (x, &vx) in verts.iter().enumerate() {
                    let s = self.vertex_reflection(&quotients, a, vx);
                    gens.push(s.mul(&iso.images[x]));
                }
            }
        }
        if gens.is_empty() {
            return Ok(MatrixGroup::trivial(self.dim));
        }
        let g = MatrixGroup::new(self.dim, gens, Some("assembled".into()))?;
        // certify the result is a reflection-rotation group
        let inv = inventory(&g, element_cap())?;
        if !crate::analysis::generated_by_reflections_and_rotations(&g, &inv)? {
            return Err(Error::NotReflectionRotation);
        }
        Ok(g)
    }

    /// Does the data predict a reflection in the assembled group (a class
    /// consisting of one trivial component)?
    pub fn predicts_reflection(&self) -> Result<bool> {
        let quotients = self.triple_quotients()?;
        Ok(self.classes.iter().any(|c| {
            c.len() == 1
                && is_trivial_component(
                    &quotients[c[0].0].quotient.diagram,
                    &quotients[c[0].0].components[c[0].1],
                )
        }))
    }

    /// Canonical signature for round-trip comparison, independent of triple
    /// and class labeling.
    pub fn signature(&self) -> Result<Vec<String>> {
        let quotients = self.triple_quotients()?;
        let mut triple_sigs: Vec<String> = Vec::new();
        for (ti, t) in self.triples.iter().enumerate() {
            let ess = t.g.essential_dim();
            let diagram = quotients[ti].quotient.diagram.canonical_key();
            triple_sigs.push(format!(
                "dim{} G{} H{} F{} diagram{:?}",
                ess,
                t.g.order()?,
                t.h.order()?,
                t.f.order()?,
                diagram
            ));
        }
        let mut class_sigs: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let mut members: Vec<String> = c
                    .iter()
                    .map(|&(ti, ci)| {
                        let comp = component_diagram(
                            &quotients[ti].quotient.diagram,
                            &quotients[ti].components[ci],
                        )
                        .canonical_key();
                        format!("{}:{:?}", triple_sigs[ti], comp)
                    })
                    .collect();
                members.sort();
                members.join("|")
            })
            .collect();
        class_sigs.sort();
        let mut out = triple_sigs;
        out.sort();
        out.extend(class_sigs);
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RotationKind {
    First { component: usize },
    Second { components: (usize, usize) },
    Neither,
}

/// Restriction behaviour of g on a component basis: identity, reflection,
/// rotation, or other, decided inside the component.
fn block_kind(g: &CycloMatrix, comp: &[CycloVector]) -> Result<(usize, i8)> {
    // returns (codim inside the component, determinant of the restriction)
    let dim = g.rows;
    let k = comp.len();
    let b = CycloMatrix::from_fn(dim, k, |i, j| comp[j].entries[i].clone());
    let bt = b.transpose();
    let gram_inv = bt.mul(&b).inverse()?;
    let restricted = gram_inv.mul(&bt).mul(&g.mul(&b));
    let codim = k - restricted.fixed_dim();
    let det = if restricted.det() == Cyclo::one() { 1 } else { -1 };
    Ok((codim, det))
}

/// Classify a rotation of a reducible group by its component support.
pub fn kind_of(g: &CycloMatrix, components: &[Vec<CycloVector>]) -> Result<RotationKind> {
    let mut nontrivial: Vec<(usize, usize, i8)> = Vec::new();
    for (i, comp) in components.iter().enumerate() {
        // component must be invariant for the projection to make sense
        let image: Vec<CycloVector> = comp.iter().map(|v| g.apply(v)).collect();
        if !crate::linalg::subspace_contained(&image, comp) {
            return Ok(RotationKind::Neither);
        }
        let (codim, det) = block_kind(g, comp)?;
        if codim > 0 {
            nontrivial.push((i, codim, det));
        }
    }
    match nontrivial.len() {
        1 => {
            let (i, codim, det) = nontrivial[0];
            if codim == 2 && det == 1 {
                Ok(RotationKind::First { component: i })
            } else {
                Ok(RotationKind::Neither)
            }
        }
        2 => {
            let (i, ci, di) = nontrivial[0];
            let (j, cj, dj) = nontrivial[1];
            if ci == 1 && cj == 1 && di == -1 && dj == -1 {
                Ok(RotationKind::Second { components: (i, j) })
            } else {
                Ok(RotationKind::Neither)
            }
        }
        _ => Ok(RotationKind::Neither),
    }
}

/// pi_i(g) extended by the identity outside the component.
fn project_to_component(g: &CycloMatrix, proj: &CycloMatrix) -> CycloMatrix {
    let n = g.rows;
    let id = CycloMatrix::identity(n);
    proj.mul(&g.mul(proj)).add(&id.sub(proj))
}

/// Extract a simple system from a set of reflections: one oriented root per
/// mirror line, positive for a generic functional; simple roots are those
/// not expressible as positive combinations of two other positive roots.
/// Works for crystallographic and dihedral mirror arrangements alike.
pub fn simple_reflections(dim: usize, reflections: &[CycloMatrix]) -> Result<Vec<CycloMatrix>> {
    if reflections.is_empty() {
        return Ok(Vec::new());
    }
    // generic functional with an irrational tilt to break rational ties
    let phase = crate::cyclo::cos_sin(1, 9).0;
    let weights: Vec<Cyclo> = (0..dim)
        .map(|i| {
            let base = Cyclo::ratio(1, 101i64.pow((i % 6) as u32));
            let tilt = phase.scale(&num_rational::BigRational::new(
                (i as i64 + 1).into(),
                10_000.into(),
            ));
            base.add(&tilt)
        })
        .collect();
    let value = |v: &CycloVector| -> Cyclo {
        let mut acc = Cyclo::zero();
        for (w, e) in weights.iter().zip(&v.entries) {
            acc = acc.add(&w.mul(e));
        }
        acc
    };
    let sign_of = |c: &Cyclo| -> Result<i32> {
        if c.is_zero() {
            return Ok(0);
        }
        let (re, _) = c.approx_complex();
        if re > 1e-9 {
            Ok(1)
        } else if re < -1e-9 {
            Ok(-1)
        } else {
            Err(Error::InvalidConstruction("functional not generic for roots".into()))
        }
    };
    // one positively oriented root per mirror line
    let mut positive: Vec<CycloVector> = Vec::new();
    let mut keys = HashSet::new();
    for s in reflections {
        let line = canonical_subspace(&s.add(&CycloMatrix::identity(dim)).kernel());
        if line.len() != 1 {
            return Err(Error::InvalidConstruction("non-reflection in simple extraction".into()));
        }
        let key: Vec<u8> = line[0].key_bytes();
        if !keys.insert(key) {
            continue;
        }
        let r = line[0].clone();
        match sign_of(&value(&r))? {
            1 => positive.push(r),
            -1 => positive.push(r.neg()),
            _ => return Err(Error::InvalidConstruction("root on the functional wall".into())),
        }
    }
    let mut simple: Vec<CycloVector> = Vec::new();
    'outer: for (ri, r) in positive.iter().enumerate() {
        for (ai, a) in positive.iter().enumerate() {
            if ai == ri {
                continue;
            }
            for (bi, b) in positive.iter().enumerate() {
                if bi == ri || bi <= ai {
                    continue;
                }
                // r = alpha a + beta b with alpha, beta > 0?
                if let Some((alpha, beta)) = solve_two(a, b, r) {
                    if sign_of(&alpha)? > 0 && sign_of(&beta)? > 0 {
                        continue 'outer;
                    }
                }
            }
        }
        simple.push(r.clone());
    }
    Ok(simple.iter().map(|r| crate::catalog::coxeter::reflection_matrix(dim, r)).collect())
}

/// Solve r = alpha a + beta b exactly, if consistent.
fn solve_two(a: &CycloVector, b: &CycloVector, r: &CycloVector) -> Option<(Cyclo, Cyclo)> {
    let dim = a.dim();
    let m = CycloMatrix::from_fn(dim, 2, |i, j| {
        if j == 0 {
            a.entries[i].clone()
        } else {
            b.entries[i].clone()
        }
    });
    let bt = m.transpose();
    let gram = bt.mul(&m);
    let gram_inv = gram.inverse().ok()?;
    let rhs = CycloMatrix::from_fn(dim, 1, |i, _| r.entries[i].clone());
    let sol = gram_inv.mul(&bt.mul(&rhs));
    // verify consistency
    let back = m.mul(&sol);
    for i in 0..dim {
        if back.at(i, 0) != &r.entries[i] {
            return None;
        }
    }
    Some((sol.at(0, 0).clone(), sol.at(1, 0).clone()))
}

/// Decompose a reflection-rotation group into its triple data, component
/// equivalence classes and relatedness isomorphisms.
pub fn decompose(g: &MatrixGroup) -> Result<AssemblyData> {
    let comps = crate::analysis::irreducible_components(g)?;
    let components = comps.components;
    let inv = inventory(g, element_cap())?;
    if !crate::analysis::generated_by_reflections_and_rotations(g, &inv)? {
        return Err(Error::NotReflectionRotation);
    }
    let dim = g.dim;
    let projections: Vec<CycloMatrix> =
        components.iter().map(|c| projection_onto(c)).collect();
    // classify rotations by kind
    let mut first_kind: Vec<CycloMatrix> = Vec::new();
    let mut second_kind: Vec<(CycloMatrix, usize, usize)> = Vec::new();
    for r in &inv.rotations {
        match kind_of(r, &components)? {
            RotationKind::First { .. } => first_kind.push(r.clone()),
            RotationKind::Second { components: (i, j) } => second_kind.push((r.clone(), i, j)),
            RotationKind::Neither => {}
        }
    }
    let h_closure = g.normal_closure(&first_kind)?;
    let mut f_seed: Vec<CycloMatrix> = inv.reflections.clone();
    f_seed.extend(second_kind.iter().map(|(m, _, _)| m.clone()));
    let f_closure = g.normal_closure(&f_seed)?;
    // build per-component triples
    let mut triples = Vec::new();
    for (ci, _comp) in components.iter().enumerate() {
        let p = &projections[ci];
        let project_gens = |src: &MatrixGroup| -> Vec<CycloMatrix> {
            src.generators
                .iter()
                .map(|m| project_to_component(m, p))
                .filter(|m| !m.is_identity())
                .collect()
        };
        let gi_gens = {
            let mut v = project_gens(g);
            if v.is_empty() {
                v.push(CycloMatrix::identity(dim));
            }
            v
        };
        let hi_gens = project_gens(&h_closure);
        let fi_gens = project_gens(&f_closure);
        let gi = MatrixGroup::new(dim, gi_gens, Some(format!("G_{ci}")))?;
        let hi = if hi_gens.is_empty() {
            MatrixGroup::trivial(dim)
        } else {
            MatrixGroup::new(dim, hi_gens, Some(format!("H_{ci}")))?
        };
        let fi = if fi_gens.is_empty() {
            MatrixGroup::trivial(dim)
        } else {
            MatrixGroup::new(dim, fi_gens, Some(format!("F_{ci}")))?
        };
        // simple reflections of F_i from its full reflection inventory
        let f_simple = if fi.order()? == 1 {
            Vec::new()
        } else {
            let f_inv = inventory(&fi, element_cap())?;
            simple_reflections(dim, &f_inv.reflections)?
        };
        triples.push(TripleDatum {
            g: gi,
            h: hi,
            f: fi,
            f_simple,
            case_tag: None,
            expected_diagram: None,
        });
    }
    let data_stub = AssemblyData { dim, triples, classes: Vec::new(), isos: Vec::new() };
    let quotients = data_stub.triple_quotients()?;
    let mut triples = data_stub.triples;
    let envs: Vec<QuotientEnv> =
        triples.iter().map(QuotientEnv::build).collect::<Result<_>>()?;
    // relatedness: link components through second-kind rotations
    let mut edges: Vec<(ComponentRef, ComponentRef, CycloMatrix)> = Vec::new();
    for (m, i, j) in &second_kind {
        let si = project_to_component(m, &projections[*i]);
        let sj = project_to_component(m, &projections[*j]);
        // skip pairs whose factors are already in G (then nothing is related)
        if g.contains(&si)? {
            continue;
        }
        let ca = envs[*i].component_of_reflection(&triples[*i], &quotients[*i], &si)?;
        let cb = envs[*j].component_of_reflection(&triples[*j], &quotients[*j], &sj)?;
        edges.push((((*i), ca), ((*j), cb), m.clone()));
    }
    // union-find over component refs
    let mut all_refs: Vec<ComponentRef> = Vec::new();
    for (ti, q) in quotients.iter().enumerate() {
        for ci in 0..q.components.len() {
            all_refs.push((ti, ci));
        }
    }
    let idx_of = |r: ComponentRef, refs: &[ComponentRef]| refs.iter().position(|x| *x == r).unwrap();
    let mut parent: Vec<usize> = (0..all_refs.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (a, b, _) in &edges {
        let (ia, ib) = (idx_of(*a, &all_refs), idx_of(*b, &all_refs));
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut classes_map: BTreeMap<usize, Vec<ComponentRef>> = BTreeMap::new();
    for (i, r) in all_refs.iter().enumerate() {
        classes_map.entry(find(&mut parent, i)).or_default().push(*r);
    }
    let classes: Vec<Vec<ComponentRef>> = classes_map.into_values().collect();
    // isomorphisms for the nontrivial pairs, induced by relatedness
    let mut isos = Vec::new();
    for class in &classes {
        if class.len() != 2 {
            continue;
        }
        let (a, b) = (class[0], class[1]);
        if is_trivial_component(&quotients[a.0].quotient.diagram, &quotients[a.0].components[a.1]) {
            continue;
        }
        let verts = &quotients[a.0].components[a.1];
        let mut images = Vec::new();
        for &v in verts {
            let s = triples[a.0].f_simple[quotients[a.0].quotient.classes[v][0]].clone();
            let target = envs[a.0].coset_of(&s)?;
            // find a second-kind witness whose i-projection is in the coset of s
            let mut image: Option<CycloMatrix> = None;
            for (m, i, j) in &second_kind {
                let (pi, pj) = if *i == a.0 && *j == b.0 {
                    (&projections[*i], &projections[*j])
                } else if *j == a.0 && *i == b.0 {
                    (&projections[*j], &projections[*i])
                } else {
                    continue;
                };
                let si = project_to_component(m, pi);
                if envs[a.0].coset_of(&si)? == target {
                    image = Some(project_to_component(m, pj));
                    break;
                }
            }
            images.push(image.ok_or_else(|| {
                Error::InvalidAssembly("no relatedness witness for a paired vertex".into())
            })?);
        }
        isos.push(IsoDatum { pair: (a, b), images });
    }
    // fill case tags with nothing; expected diagrams stay None for decomposed
    // data
    for t in triples.iter_mut() {
        t.case_tag = None;
    }
    let data = AssemblyData { dim, triples, classes, isos };
    data.validate()?;
    Ok(data)
}

/// A triple given in its own ambient dimension, before block embedding.
pub struct CatalogTriple {
    pub g: MatrixGroup,
    pub h: MatrixGroup,
    pub f: MatrixGroup,
    pub case_tag: Option<String>,
}

fn embed_matrix(m: &CycloMatrix, offset: usize, total: usize) -> CycloMatrix {
    let mut out = CycloMatrix::identity(total);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.set(offset + i, offset + j, m.at(i, j).clone());
        }
    }
    out
}

fn embed_group(g: &MatrixGroup, offset: usize, total: usize) -> Result<MatrixGroup> {
    let gens: Vec<CycloMatrix> =
        g.generators.iter().map(|m| embed_matrix(m, offset, total)).collect();
    let mut out = MatrixGroup::new(total, gens, g.name.clone())?;
    out.expected_order = g.expected_order;
    Ok(out)
}

/// The quotient diagram a case tag stands for, derived from the triple's
/// own data (rank of F, quotient index) where the shape is parameterized.
pub fn expected_diagram_for_tag(
    tag: &str,
    f_simple_count: usize,
    index: u128,
    f_simple: &[CycloMatrix],
) -> Option<CoxeterDiagram> {
    let chain = |n: usize| -> Vec<(usize, usize, u32)> {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect()
    };
    match tag {
        "(i)" | "(ii)" | "(v)" | "(xvi)" => {
            Some(CoxeterDiagram { vertices: 1, edges: vec![] })
        }
        "(iii)" | "(viii)" | "(xv)" => Some(CoxeterDiagram { vertices: 2, edges: vec![] }),
        "(vi)" | "(xi)" | "(xvii)" => {
            Some(CoxeterDiagram { vertices: 2, edges: vec![(0, 1, 3)] })
        }
        "(vii)" => {
            // A_{n-1} x A_1 where n + 1 = rank of BC_n plus the sign vertex
            let n = f_simple_count - 1;
            Some(CoxeterDiagram { vertices: n + 1, edges: chain(n) })
        }
        "(ix)" | "(xiv)" => Some(CoxeterDiagram { vertices: 3, edges: vec![(0, 1, 3)] }),
        "(x)" => {
            let n = f_simple_count;
            Some(CoxeterDiagram { vertices: n - 1, edges: chain(n - 1) })
        }
        "(xii)" => {
            let k = (index / 2) as u32;
            let edges = if k >= 3 { vec![(0, 1, k)] } else { vec![] };
            Some(CoxeterDiagram { vertices: 2, edges })
        }
        "(xiii)" => Some(CoxeterDiagram { vertices: 4, edges: vec![(0, 1, 3), (2, 3, 3)] }),
        "(iv)" => {
            // the diagram of F itself, from pairwise product orders
            let k = f_simple.len();
            let mut edges = Vec::new();
            for a in 0..k {
                for b in a + 1..k {
                    let p = f_simple[a].mul(&f_simple[b]);
                    let mut acc = p.clone();
                    let mut ord = 1u32;
                    while !acc.is_identity() && ord < 10_000 {
                        acc = acc.mul(&p);
                        ord += 1;
                    }
                    if ord >= 3 {
                        edges.push((a, b, ord));
                    }
                }
            }
            Some(CoxeterDiagram { vertices: k, edges })
        }
        _ => None,
    }
}

/// Vertex-representative reflections of each diagram component of a
/// standalone triple's quotient, in the triple's local dimension and the
/// component's vertex order. Pairs of identical triples use these as the
/// identity isomorphism.
pub fn component_vertex_reflections(part: &CatalogTriple) -> Result<Vec<Vec<CycloMatrix>>> {
    let q = quotient_coxeter(&part.g, &part.h, &part.f.generators)?;
    let comps = diagram_components(&q.diagram);
    Ok(comps
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&v| part.f.generators[q.classes[v][0]].clone())
                .collect()
        })
        .collect())
}

/// Build AssemblyData from standalone triples: factors are embedded
/// block-diagonally in listing order, isomorphism images are given in the
/// target triple's local dimension.
pub fn assembly_from_parts(
    parts: Vec<CatalogTriple>,
    classes: Vec<Vec<ComponentRef>>,
    isos_local: Vec<((ComponentRef, ComponentRef), Vec<CycloMatrix>)>,
) -> Result<AssemblyData> {
    let dims: Vec<usize> = parts.iter().map(|p| p.g.dim).collect();
    let total: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0usize, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut triples = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if p.h.dim != p.g.dim || p.f.dim != p.g.dim {
            return Err(Error::InvalidAssembly(format!(
                "triple {i}: G, H, F must share one ambient dimension"
            )));
        }
        let g = embed_group(&p.g, offsets[i], total)?;
        let h = embed_group(&p.h, offsets[i], total)?;
        let f = embed_group(&p.f, offsets[i], total)?;
        let f_simple: Vec<CycloMatrix> = if p.f.order()? == 1 {
            Vec::new()
        } else {
            let mats: Vec<CycloMatrix> = p
                .f
                .generators
                .iter()
                .map(|m| embed_matrix(m, offsets[i], total))
                .collect();
            for m in &mats {
                if m.fixed_dim() != total - 1 {
                    return Err(Error::InvalidAssembly(format!(
                        "triple {i}: F generators must be simple reflections"
                    )));
                }
            }
            mats
        };
        let index = p.g.order()? / p.h.order()?;
        let expected_diagram = p.case_tag.as_deref().and_then(|tag| {
            expected_diagram_for_tag(tag, f_simple.len(), index, &f_simple)
        });
        triples.push(TripleDatum {
            g,
            h,
            f,
            f_simple,
            case_tag: p.case_tag.clone(),
            expected_diagram,
        });
    }
    let isos = isos_local
        .into_iter()
        .map(|((a, b), images)| {
            let target = b.0;
            let images = images
                .iter()
                .map(|m| embed_matrix(m, offsets[target], total))
                .collect();
            IsoDatum { pair: (a, b), images }
        })
        .collect();
    Ok(AssemblyData { dim: total, triples, classes, isos })
}

/// Per-triple coset environment: every element of G_i as a permutation on
/// G_i's point set with its H_i-coset label. Built once, queried cheaply.
struct QuotientEnv {
    image: std::sync::Arc<crate::matgroup::PermImage>,
    label_of: HashMap<Vec<u32>, usize>,
    rep_perms: Vec<crate::perm::Perm>,
    labels: usize,
}

impl QuotientEnv {
    fn build(t: &TripleDatum) -> Result<QuotientEnv> {
        let image = t.g.perm_image()?;
        let cap = element_cap();
        // H_i element perms on G_i's points
        let mut h_set: HashSet<Vec<u32>> = HashSet::new();
        for el in t.h.elements(cap)? {
            let p = image
                .induced_perm(&el.matrix)
                .ok_or(Error::NotAPointPermutation)?;
            h_set.insert(p.key().to_vec());
        }
        let mut label_of: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut rep_perms = Vec::new();
        let mut iter = t.g.element_perm_iter(cap)?;
        let mut all: Vec<crate::perm::Perm> = Vec::new();
        while let Some(p) = iter.next_perm() {
            all.push(p);
        }
        for p in &all {
            if label_of.contains_key(p.key()) {
                continue;
            }
            let label = rep_perms.len();
            // the coset pH: enumerate h in H as perms and mark p o h
            for h in &h_set {
                let hp = crate::perm::Perm::from_images(h.clone());
                let member = p.compose(&hp);
                label_of.insert(member.key().to_vec(), label);
            }
            rep_perms.push(p.clone());
        }
        let labels = rep_perms.len();
        Ok(QuotientEnv { image, label_of, rep_perms, labels })
    }

    fn coset_of(&self, m: &CycloMatrix) -> Result<usize> {
        let p = self.image.induced_perm(m).ok_or(Error::NotAPointPermutation)?;
        self.label_of
            .get(p.key())
            .copied()
            .ok_or_else(|| Error::InvalidAssembly("element escapes the coset table".into()))
    }

    /// Which diagram component of the quotient holds the coset of reflection
    /// s? Found by conjugacy search over coset labels.
    fn component_of_reflection(
        &self,
        t: &TripleDatum,
        q: &TripleQuotient,
        s: &CycloMatrix,
    ) -> Result<usize> {
        let target = self.coset_of(s)?;
        let mut seen: HashSet<usize> = HashSet::new();
        let mut orbit = vec![target];
        seen.insert(target);
        let mut head = 0;
        while head < orbit.len() {
            let c = orbit[head];
            head += 1;
            for r in &self.rep_perms {
                let conj = r.compose(&self.rep_perms[c]).compose(&r.inverse());
                let idx = *self
                    .label_of
                    .get(conj.key())
                    .ok_or_else(|| Error::InvalidAssembly("conjugate escapes cosets".into()))?;
                if seen.insert(idx) {
                    orbit.push(idx);
                }
            }
        }
        let _ = self.labels;
        for (comp_idx, comp) in q.components.iter().enumerate() {
            for &v in comp {
                let rep = &t.f_simple[q.quotient.classes[v][0]];
                if seen.contains(&self.coset_of(rep)?) {
                    return Ok(comp_idx);
                }
            }
        }
        Err(Error::InvalidAssembly("reflection coset matches no diagram component".into()))
    }
}
