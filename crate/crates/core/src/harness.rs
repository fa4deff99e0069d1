//! Constructive verification machinery for the divisibility theorems:
//! phi-cores, twists of homomorphisms along degree-one elements, tail
//! comparison, similarity-class partitioning and the closure conditions.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::indexed::{kernel_image, Hom};
use crate::word::Word;

/// The phi-core of H: elements h of H with k h k^-1 in H for every k in the
/// image subgroup of phi, centralizing the image of the degree kernel.
pub fn phi_core(phi: &Hom, h: &Subgroup) -> Result<Subgroup> {
    h.same_parent(phi.target())?;
    let g = phi.target();
    let image = phi.image_subgroup();
    let kernel = kernel_image(phi);
    let elems: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| {
            image
                .elements()
                .iter()
                .all(|&k| h.contains(g.mul(g.mul(k, x), g.inv(k))))
                && kernel
                    .elements()
                    .iter()
                    .all(|&z| g.mul(x, z) == g.mul(z, x))
        })
        .collect();
    Ok(Subgroup::from_sorted(Arc::clone(g), elems))
}

/// f -> phi(f)^h, i.e. every image conjugated to h^-1 * image * h.
pub fn conjugate_hom(phi: &Hom, h: usize) -> Hom {
    let g = phi.target();
    let images = phi.images().iter().map(|&x| g.conj(x, h)).collect();
    Hom::new_unchecked(Arc::clone(phi.presentation()), Arc::clone(g), images)
}

fn twist_images(phi: &Hom, g_elt: usize) -> (usize, Vec<usize>) {
    let g = phi.target();
    let p = phi.presentation();
    let t_image = phi.evaluate(&p.degree_one_word());
    let tg = g.mul(t_image, g_elt);
    let images = phi
        .images()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let d = p.degrees()[i];
            g.mul(g.mul(g.pow(tg, d), g.pow(t_image, -d)), x)
        })
        .collect();
    (t_image, images)
}

/// The twist of Lemma 0: the unique homomorphism agreeing with phi on all
/// degree-zero elements and sending a degree-one element t to phi(t) * g.
/// Requires g to centralize the image of the degree kernel; the relator
/// re-check is defensive and unreachable when the precondition holds.
pub fn twist_hom(phi: &Hom, g_elt: usize) -> Result<Hom> {
    let g = phi.target();
    g.check_index(g_elt)?;
    let kernel = kernel_image(phi);
    if !kernel
        .elements()
        .iter()
        .all(|&z| g.mul(g_elt, z) == g.mul(z, g_elt))
    {
        return Err(Error::NotCentralizing);
    }
    let (_, images) = twist_images(phi, g_elt);
    let psi = Hom::new_unchecked(Arc::clone(phi.presentation()), Arc::clone(g), images);
    if let Some(i) = psi.first_violated_relator() {
        return Err(Error::RelatorViolation { relator: i });
    }
    Ok(psi)
}

/// Builds the twist images without the centralizing precondition and instead
/// validates the full contract of the twist: all relators hold, the
/// degree-one image is phi(t) * g, and the map agrees with phi on the degree
/// kernel. By the twisting lemma this succeeds if and only if g centralizes
/// the kernel image, which is what the randomized biconditional check uses.
pub fn twist_hom_unchecked(phi: &Hom, g_elt: usize) -> Result<Hom> {
    let g = phi.target();
    g.check_index(g_elt)?;
    let (t_image, images) = twist_images(phi, g_elt);
    let psi = Hom::new_unchecked(Arc::clone(phi.presentation()), Arc::clone(g), images);
    if let Some(i) = psi.first_violated_relator() {
        return Err(Error::RelatorViolation { relator: i });
    }
    let p = phi.presentation();
    if psi.evaluate(&p.degree_one_word()) != g.mul(t_image, g_elt) {
        return Err(Error::NotCentralizing);
    }
    if !zero_parts_conjugate(phi, &psi, 0) {
        return Err(Error::NotCentralizing);
    }
    Ok(psi)
}

/// Per-homomorphism cache of the values the tail comparators need.
struct TailData {
    t_image: usize,
    z_images: Vec<usize>,
}

fn tail_data(hom: &Hom, t_word: &Word, z_words: &[Word]) -> TailData {
    TailData {
        t_image: hom.evaluate(t_word),
        z_images: z_words.iter().map(|z| hom.evaluate(z)).collect(),
    }
}

/// psi(u) = h phi(u) h^-1 for u over the kernel generators conjugated by
/// t^k, k up to the target exponent. Sufficient: both sides are
/// homomorphisms on the degree kernel, those conjugates generate it, and
/// both conjugate sequences are periodic with period dividing the exponent.
fn zero_parts_match(
    g: &FiniteGroup,
    phi: &TailData,
    psi: &TailData,
    h: usize,
) -> bool {
    let e = g.exponent();
    let h_inv = g.inv(h);
    for (&z_phi, &z_psi) in phi.z_images.iter().zip(&psi.z_images) {
        let mut tk_phi = 0usize;
        let mut tk_psi = 0usize;
        for _ in 0..e {
            let lhs = g.conj(z_psi, tk_psi);
            let rhs = g.mul(g.mul(h, g.conj(z_phi, tk_phi)), h_inv);
            if lhs != rhs {
                return false;
            }
            tk_phi = g.mul(tk_phi, phi.t_image);
            tk_psi = g.mul(tk_psi, psi.t_image);
        }
    }
    true
}

fn zero_parts_conjugate(phi: &Hom, psi: &Hom, h: usize) -> bool {
    let p = phi.presentation();
    let t_word = p.degree_one_word();
    let z_words = p.kernel_generator_words();
    zero_parts_match(
        phi.target(),
        &tail_data(phi, &t_word, &z_words),
        &tail_data(psi, &t_word, &z_words),
        h,
    )
}

/// Reachability check for psi(f) H = h phi(f) H over all f: starting from
/// state h, transitions s -> psi(x_i)^-1 s phi(x_i) and their inverses must
/// stay inside H. The states are exactly psi(f)^-1 h phi(f).
fn coset_parts_match(
    g: &FiniteGroup,
    h_mask: &[bool],
    phi_images: &[usize],
    psi_images: &[usize],
    h: usize,
) -> bool {
    if !h_mask[h] {
        return false;
    }
    let mut seen = vec![false; g.order()];
    let mut stack = vec![h];
    seen[h] = true;
    while let Some(s) = stack.pop() {
        for (&a, &b) in phi_images.iter().zip(psi_images) {
            for next in [g.mul(g.mul(g.inv(b), s), a), g.mul(g.mul(b, s), g.inv(a))] {
                if !h_mask[next] {
                    return false;
                }
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    true
}

/// Tails of phi and psi are conjugate by h: the zero parts agree up to
/// conjugation by h and the coset parts satisfy psi(f) H = h phi(f) H.
pub fn tails_conjugate(phi: &Hom, psi: &Hom, h: usize, subgroup: &Subgroup) -> Result<bool> {
    phi.same_context(psi)?;
    subgroup.same_parent(phi.target())?;
    let g = phi.target();
    g.check_index(h)?;
    debug_assert!(subgroup.contains(h), "h must lie in the subgroup");
    if !zero_parts_conjugate(phi, psi, h) {
        return Ok(false);
    }
    Ok(coset_parts_match(
        g,
        &subgroup.mask(),
        phi.images(),
        psi.images(),
        h,
    ))
}

/// First h in ascending element order of the subgroup making the tails
/// conjugate, if any.
pub fn similar(phi: &Hom, psi: &Hom, subgroup: &Subgroup) -> Result<Option<usize>> {
    phi.same_context(psi)?;
    subgroup.same_parent(phi.target())?;
    for &h in subgroup.elements() {
        if tails_conjugate(phi, psi, h, subgroup)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDescriptor {
    /// Number of homomorphisms in the similarity class.
    pub size: usize,
    /// Number of distinct tails within the class.
    pub tail_class_count: usize,
    /// Size of each tail fiber, ascending.
    pub fiber_sizes: Vec<usize>,
    /// |H_phi| for a class representative.
    pub core_order: usize,
    /// |H : H_phi| for the same representative.
    pub core_index: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub total: usize,
    pub subgroup_order: usize,
    pub conditions_i: bool,
    pub conditions_ii: bool,
    pub all_classes_size_h: bool,
    pub classes: Vec<ClassDescriptor>,
}

/// Checks the two closure conditions under the closed-world reading:
/// membership means membership in the given list.
/// I: every conjugate of a member by an element of H is a member.
/// II: every twist of a member by an element of its phi-core is a member.
pub fn verify_conditions(homs: &[Hom], subgroup: &Subgroup) -> Result<(bool, bool)> {
    if homs.is_empty() {
        return Ok((true, true));
    }
    for hom in &homs[1..] {
        homs[0].same_context(hom)?;
    }
    subgroup.same_parent(homs[0].target())?;
    let member: HashSet<&[usize]> = homs.iter().map(|h| h.images()).collect();
    let mut cond_i = true;
    'outer_i: for phi in homs {
        for &h in subgroup.elements() {
            if !member.contains(conjugate_hom(phi, h).images()) {
                cond_i = false;
                break 'outer_i;
            }
        }
    }
    let mut cond_ii = true;
    'outer_ii: for phi in homs {
        let core = phi_core(phi, subgroup)?;
        for &g_elt in core.elements() {
            let psi = twist_hom(phi, g_elt)?;
            if !member.contains(psi.images()) {
                cond_ii = false;
                break 'outer_ii;
            }
        }
    }
    Ok((cond_i, cond_ii))
}

/// Partitions the homomorphism list into similarity classes, splits each
/// class into tail classes, and records the core orders predicted for the
/// class structure: the tail count per class is |H : H_phi| and each fiber
/// has |H_phi| elements.
pub fn partition_classes(homs: &[Hom], subgroup: &Subgroup) -> Result<HarnessReport> {
    let (cond_i, cond_ii) = verify_conditions(homs, subgroup)?;
    if homs.is_empty() {
        return Ok(HarnessReport {
            total: 0,
            subgroup_order: subgroup.order(),
            conditions_i: cond_i,
            conditions_ii: cond_ii,
            all_classes_size_h: true,
            classes: Vec::new(),
        });
    }
    subgroup.same_parent(homs[0].target())?;

    // similarity is an equivalence relation, so comparing against one
    // representative per class is exact
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..homs.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if similar(&homs[class[0]], &homs[j], subgroup)?.is_some() {
                class.push(j);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![j]);
        }
    }

    let mut descriptors = Vec::with_capacity(classes.len());
    for class in &classes {
        // tail classes: same tail means tails conjugate by the identity
        let mut tails: Vec<Vec<usize>> = Vec::new();
        for &j in class {
            let mut placed = false;
            for tail in tails.iter_mut() {
                if tails_conjugate(&homs[tail[0]], &homs[j], 0, subgroup)? {
                    tail.push(j);
                    placed = true;
                    break;
                }
            }
            if !placed {
                tails.push(vec![j]);
            }
        }
        let mut fiber_sizes: Vec<usize> = tails.iter().map(|t| t.len()).collect();
        fiber_sizes.sort_unstable();
        let core = phi_core(&homs[class[0]], subgroup)?;
        descriptors.push(ClassDescriptor {
            size: class.len(),
            tail_class_count: tails.len(),
            fiber_sizes,
            core_order: core.order(),
            core_index: subgroup.order() / core.order(),
        });
    }
    descriptors.sort_by(|a, b| {
        (a.size, a.tail_class_count, a.core_order, &a.fiber_sizes).cmp(&(
            b.size,
            b.tail_class_count,
            b.core_order,
            &b.fiber_sizes,
        ))
    });
    let all_size_h = descriptors.iter().all(|d| d.size == subgroup.order());
    Ok(HarnessReport {
        total: homs.len(),
        subgroup_order: subgroup.order(),
        conditions_i: cond_i,
        conditions_ii: cond_ii,
        all_classes_size_h: all_size_h,
        classes: descriptors,
    })
}
