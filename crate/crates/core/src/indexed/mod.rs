//! Finitely presented indexed groups: presentations carrying a degree
//! epimorphism onto the integers, homomorphisms into finite groups, and the
//! degree-kernel machinery the twisting lemma needs.

mod enumerate;

pub use enumerate::{
    enumerate_homs, enumerate_homs_baseline, enumerate_homs_seq, Constraint, ConstraintSet,
};

use std::collections::VecDeque;
use std::sync::Arc;

use crate::arith::egcd_vec;
use crate::error::{Error, Result};
use crate::group::{subgroup_closure_of, FiniteGroup, Subgroup};
use crate::linalg::integer_rank_and_kernel;
use crate::word::Word;

/// A nonzero primitive integer vector in the common kernel of the given
/// exponent rows, chosen deterministically (first kernel basis vector,
/// sign-normalized). Returns `NotIndexable` when the kernel is zero, i.e.
/// when no degree epimorphism onto the integers exists.
pub fn derive_degree(
    gen_count: usize,
    relator_rows: &[Vec<i64>],
    extra_zero_rows: &[Vec<i64>],
) -> Result<Vec<i64>> {
    if gen_count == 0 {
        return Err(Error::NotIndexable);
    }
    let mut rows: Vec<Vec<i64>> = relator_rows.to_vec();
    rows.extend_from_slice(extra_zero_rows);
    let (_, kernel) = integer_rank_and_kernel(&rows, gen_count);
    kernel.ok_or(Error::NotIndexable)
}

/// Semidirect-flavor data: the concrete base group K of an extension
/// Z ⋉ K, the automorphism realized by conjugation with the degree-one
/// generator, and a representative word for every element of K.
pub struct SdStructure {
    base: Arc<FiniteGroup>,
    automorphism: Vec<usize>,
    base_generators: Vec<usize>,
    element_words: Vec<Word>,
}

impl SdStructure {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn automorphism(&self) -> &[usize] {
        &self.automorphism
    }

    pub fn base_generators(&self) -> &[usize] {
        &self.base_generators
    }

    /// Word denoting the given element of K inside the presentation.
    pub fn element_word(&self, element: usize) -> &Word {
        &self.element_words[element]
    }
}

pub struct IndexedPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
    degrees: Vec<i64>,
    fixed_images: Vec<Option<usize>>,
    sd: Option<SdStructure>,
}

impl std::fmt::Debug for IndexedPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndexedPresentation")
            .field("generators", &self.names)
            .field("relators", &self.relators.len())
            .field("degrees", &self.degrees)
            .finish()
    }
}

impl IndexedPresentation {
    /// Free group of the given rank with generators x0..x(rank-1) and the
    /// lexicographically first degree vector (1, 0, ..., 0).
    pub fn free(rank: usize) -> Result<Arc<Self>> {
        let names = (0..rank).map(|i| format!("x{i}")).collect();
        Self::new(names, Vec::new(), Vec::new(), None)
    }

    /// General constructor. `fixed` binds generator indices to target-element
    /// indices (coefficient letters). When `degrees` is `None` the degree
    /// vector is derived from the relator exponent rows plus unit rows for
    /// every fixed generator.
    pub fn new(
        names: Vec<String>,
        relators: Vec<Word>,
        fixed: Vec<(usize, usize)>,
        degrees: Option<Vec<i64>>,
    ) -> Result<Arc<Self>> {
        let m = names.len();
        if m == 0 {
            return Err(Error::NotIndexable);
        }
        for w in &relators {
            if let Some(g) = w.max_generator() {
                if g >= m {
                    return Err(Error::Parse(format!("relator uses unknown generator {g}")));
                }
            }
        }
        let mut fixed_images = vec![None; m];
        for &(g, img) in &fixed {
            if g >= m {
                return Err(Error::Parse(format!("fixed image for unknown generator {g}")));
            }
            fixed_images[g] = Some(img);
        }
        let degrees = match degrees {
            Some(d) => {
                if d.len() != m {
                    return Err(Error::Parse("degree vector has wrong length".into()));
                }
                d
            }
            None => {
                let relator_rows: Vec<Vec<i64>> =
                    relators.iter().map(|w| w.exponent_row(m)).collect();
                let fixed_rows: Vec<Vec<i64>> = fixed_images
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.is_some())
                    .map(|(i, _)| {
                        let mut row = vec![0i64; m];
                        row[i] = 1;
                        row
                    })
                    .collect();
                derive_degree(m, &relator_rows, &fixed_rows)?
            }
        };
        let p = IndexedPresentation {
            names,
            relators,
            degrees,
            fixed_images,
            sd: None,
        };
        p.validate()?;
        Ok(Arc::new(p))
    }

    /// The semidirect flavor Z ⋉ K: generator 0 is the degree-one letter t,
    /// the remaining generators are a greedy generating set of K. Relators are
    /// the K multiplication-table relations (written through per-element
    /// representative words found by BFS over the Cayley graph) plus the
    /// t-conjugation relations realizing the automorphism.
    pub fn semidirect(base: Arc<FiniteGroup>, automorphism: Vec<usize>) -> Result<Arc<Self>> {
        let n = base.order();
        if automorphism.len() != n {
            return Err(Error::Parse("automorphism has wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &v in &automorphism {
            if v >= n || seen[v] {
                return Err(Error::Parse("automorphism is not a permutation".into()));
            }
            seen[v] = true;
        }
        if automorphism[0] != 0 {
            return Err(Error::Parse("automorphism must fix the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if automorphism[base.mul(a, b)] != base.mul(automorphism[a], automorphism[b]) {
                    return Err(Error::Parse(
                        "permutation does not preserve the multiplication table".into(),
                    ));
                }
            }
        }

        let base_generators = crate::group::greedy_generators(&base);
        let r = base_generators.len();
        let mut names = vec!["t".to_string()];
        names.extend((0..r).map(|j| format!("k{j}")));

        // BFS over the Cayley graph: representative word per element of K,
        // written in presentation generators 1..=r.
        let mut element_words: Vec<Option<Word>> = vec![None; n];
        element_words[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let wa = element_words[a].clone().expect("visited");
            for (j, &k) in base_generators.iter().enumerate() {
                let b = base.mul(a, k);
                if element_words[b].is_none() {
                    element_words[b] = Some(wa.concat(&Word::generator(1 + j)));
                    queue.push_back(b);
                }
            }
        }
        let element_words: Vec<Word> = element_words
            .into_iter()
            .map(|w| w.expect("generators generate K"))
            .collect();

        let mut relators = Vec::with_capacity(n * n + r);
        for a in 0..n {
            for b in 0..n {
                let ab = base.mul(a, b);
                relators.push(
                    element_words[a]
                        .concat(&element_words[b])
                        .concat(&element_words[ab].inverse()),
                );
            }
        }
        for (j, &k) in base_generators.iter().enumerate() {
            // t^-1 k_j t = word(automorphism(k_j))
            let lhs = Word::from_letters(vec![(0, -1), (1 + j, 1), (0, 1)]);
            relators.push(lhs.concat(&element_words[automorphism[k]].inverse()));
        }

        let mut degrees = vec![0i64; 1 + r];
        degrees[0] = 1;
        let p = IndexedPresentation {
            names,
            relators,
            degrees,
            fixed_images: vec![None; 1 + r],
            sd: Some(SdStructure {
                base,
                automorphism,
                base_generators,
                element_words,
            }),
        };
        p.validate()?;
        Ok(Arc::new(p))
    }

    fn validate(&self) -> Result<()> {
        let m = self.gen_count();
        for (i, w) in self.relators.iter().enumerate() {
            if w.degree(&self.degrees) != 0 {
                return Err(Error::Parse(format!("relator {i} has nonzero total degree")));
            }
        }
        for (g, f) in self.fixed_images.iter().enumerate() {
            if f.is_some() && self.degrees[g] != 0 {
                return Err(Error::Parse(format!(
                    "generator {g} has a fixed image but nonzero degree"
                )));
            }
        }
        let (g, _) = egcd_vec(&self.degrees);
        if g != 1 {
            return Err(Error::Parse("degree vector is not primitive".into()));
        }
        let _ = m;
        Ok(())
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn fixed_images(&self) -> &[Option<usize>] {
        &self.fixed_images
    }

    pub fn sd(&self) -> Option<&SdStructure> {
        self.sd.as_ref()
    }

    /// A degree-one word: product of x_i^(a_i) in ascending generator order
    /// where the a_i come from the extended gcd of the degree vector.
    pub fn degree_one_word(&self) -> Word {
        let (g, coeffs) = egcd_vec(&self.degrees);
        debug_assert_eq!(g, 1, "degree vector is primitive");
        Word::from_letters(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| (i, a))
                .collect(),
        )
    }

    /// Kernel-generator words z_i = x_i t^(-d_i). The conjugates z_i^(t^k)
    /// over all integers k generate the degree kernel: rewriting any
    /// degree-zero word through x_i = z_i t^(d_i) and collecting the t-powers
    /// rightward leaves exactly a product of such conjugates.
    pub fn kernel_generator_words(&self) -> Vec<Word> {
        let t = self.degree_one_word();
        (0..self.gen_count())
            .map(|i| {
                Word::generator(i)
                    .concat(&t.repeat(-self.degrees[i]))
                    .merged()
            })
            .collect()
    }
}

/// A homomorphism from an indexed presentation into a finite group,
/// represented by its generator images.
#[derive(Clone)]
pub struct Hom {
    presentation: Arc<IndexedPresentation>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl std::fmt::Debug for Hom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hom").field("images", &self.images).finish()
    }
}

impl PartialEq for Hom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.presentation, &other.presentation)
            && Arc::ptr_eq(&self.target, &other.target)
            && self.images == other.images
    }
}
impl Eq for Hom {}

impl Hom {
    /// Wraps an image vector, verifying fixed images and all relators.
    pub fn new(
        presentation: Arc<IndexedPresentation>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != presentation.gen_count() {
            return Err(Error::Parse("image vector has wrong length".into()));
        }
        for &img in &images {
            target.check_index(img)?;
        }
        for (g, f) in presentation.fixed_images().iter().enumerate() {
            if let Some(required) = f {
                if images[g] != *required {
                    return Err(Error::Parse(format!(
                        "image of generator {g} contradicts its fixed image"
                    )));
                }
            }
        }
        let hom = Hom { presentation, target, images };
        match hom.first_violated_relator() {
            None => Ok(hom),
            Some(i) => Err(Error::RelatorViolation { relator: i }),
        }
    }

    pub(crate) fn new_unchecked(
        presentation: Arc<IndexedPresentation>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Self {
        Hom { presentation, target, images }
    }

    pub fn presentation(&self) -> &Arc<IndexedPresentation> {
        &self.presentation
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn evaluate(&self, word: &Word) -> usize {
        word.evaluate(&self.target, &self.images)
    }

    pub fn first_violated_relator(&self) -> Option<usize> {
        self.presentation
            .relators()
            .iter()
            .position(|r| self.evaluate(r) != 0)
    }

    /// The image subgroup: closure of the generator images.
    pub fn image_subgroup(&self) -> Subgroup {
        subgroup_closure_of(&self.target, self.images.iter().copied())
    }

    pub fn same_context(&self, other: &Hom) -> Result<()> {
        if Arc::ptr_eq(&self.presentation, &other.presentation)
            && Arc::ptr_eq(&self.target, &other.target)
        {
            Ok(())
        } else {
            Err(Error::MixedPresentations)
        }
    }
}

/// The image of the degree kernel: closure of the kernel-generator images
/// conjugated by powers of the degree-one image. Equals the set of values of
/// all degree-zero elements.
pub fn kernel_image(hom: &Hom) -> Subgroup {
    let p = hom.presentation();
    let g = hom.target();
    let t_image = hom.evaluate(&p.degree_one_word());
    let ord = g.element_order(t_image);
    let mut gens = Vec::new();
    for z in p.kernel_generator_words() {
        let z_val = hom.evaluate(&z);
        let mut tk = 0usize; // t^k
        for _ in 0..ord {
            gens.push(g.conj(z_val, tk));
            tk = g.mul(tk, t_image);
        }
    }
    subgroup_closure_of(g, gens)
}
