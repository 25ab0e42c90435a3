//! Homomorphisms between permutation groups, given by generator images.

use std::fmt;
use std::sync::Arc;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A homomorphism `domain -> codomain` determined by the images of the
/// domain generators. Well-definedness is verified on construction: the
/// graph subgroup of `domain x codomain` must have order `|domain|`.
#[derive(Clone)]
pub struct Homomorphism {
    domain: PermGroup,
    codomain: PermGroup,
    images: Vec<Permutation>,
    graph: Arc<Chain>,
}

fn glue(a: &Permutation, b: &Permutation) -> Permutation {
    let d1 = a.degree();
    let mut images: Vec<u32> = a.images().to_vec();
    images.extend(b.images().iter().map(|&x| x + d1 as u32));
    Permutation::from_images_unchecked(images)
}

impl Homomorphism {
    pub fn new(domain: &PermGroup, codomain: &PermGroup, images: Vec<Permutation>) -> Result<Homomorphism> {
        if images.len() != domain.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        for im in &images {
            if im.degree() != codomain.degree() {
                return Err(Error::DegreeMismatch(codomain.degree(), im.degree()));
            }
            if !codomain.has(im) {
                return Err(Error::NotHomomorphism(format!("image {} outside codomain", im)));
            }
        }
        let d1 = domain.degree();
        let gens: Vec<Permutation> = domain
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| glue(g, h))
            .collect();
        let graph = Chain::build(d1 + codomain.degree(), &gens, &domain.base());
        if &graph.order() != domain.order() {
            return Err(Error::NotHomomorphism(
                "generator images violate a relation of the domain".into(),
            ));
        }
        Ok(Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
            graph: Arc::new(graph),
        })
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &PermGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// Image of a domain element.
    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        let d1 = self.domain.degree();
        if x.degree() != d1 {
            return Err(Error::DegreeMismatch(d1, x.degree()));
        }
        let lifted = glue(x, &Permutation::identity(self.codomain.degree()));
        let (residue, _) = self.graph.strip(&lifted, 0);
        let r = residue.images();
        if (0..d1).any(|i| r[i] != i as u32) {
            return Err(Error::Precondition(format!("{} is not in the domain", x)));
        }
        let c: Vec<u32> = r[d1..].iter().map(|&y| y - d1 as u32).collect();
        Ok(Permutation::from_images_unchecked(c).inverse())
    }

    pub fn image(&self) -> PermGroup {
        PermGroup::new(self.images.clone()).unwrap_or_else(|_| PermGroup::trivial(self.codomain.degree()))
    }

    pub fn kernel(&self) -> PermGroup {
        let d1 = self.domain.degree();
        let prefix: Vec<u32> = self.codomain.base().iter().map(|&b| b + d1 as u32).collect();
        let gens: Vec<Permutation> = self
            .domain
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| glue(g, h))
            .collect();
        let chain = Chain::build(d1 + self.codomain.degree(), &gens, &prefix);
        let k = prefix.len();
        let kgens: Vec<Permutation> = match chain.levels.get(k) {
            Some(level) => level
                .gens
                .iter()
                .map(|g| Permutation::from_images_unchecked(g.images()[..d1].to_vec()))
                .collect(),
            None => Vec::new(),
        };
        if kgens.is_empty() {
            PermGroup::trivial(d1)
        } else {
            PermGroup::new(kgens).expect("kernel generators share a degree")
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        let images = self
            .images
            .iter()
            .map(|x| other.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(&self.domain, &other.codomain, images)
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism(")?;
        for (i, (g, h)) in self.domain.generators().iter().zip(&self.images).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", g, h)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn sign_map_of_s4() {
        let s4 = PermGroup::new(vec![p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        let c2 = PermGroup::new(vec![p("(1 2)", 2)]).unwrap();
        let sign = Homomorphism::new(&s4, &c2, vec![p("(1 2)", 2), p("(1 2)", 2)]).unwrap();
        assert_eq!(sign.kernel().order_u64(), 12);
        assert_eq!(sign.apply(&p("(1 2 3)", 4)).unwrap(), Permutation::identity(2));
        assert_eq!(sign.apply(&p("(1 2)(3 4)", 4)).unwrap(), Permutation::identity(2));
        assert_eq!(sign.apply(&p("(1 3 2 4)", 4)).unwrap(), p("(1 2)", 2));
        assert!(sign.is_surjective());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let c4 = PermGroup::new(vec![p("(1 2 3 4)", 4)]).unwrap();
        let c3 = PermGroup::new(vec![p("(1 2 3)", 3)]).unwrap();
        assert!(Homomorphism::new(&c4, &c3, vec![p("(1 2 3)", 3)]).is_err());
    }

    #[test]
    fn kernel_times_image_is_domain() {
        let d8 = PermGroup::new(vec![p("(1 2 3 4)", 4), p("(1 3)", 4)]).unwrap();
        let c2 = PermGroup::new(vec![p("(1 2)", 2)]).unwrap();
        let h = Homomorphism::new(&d8, &c2, vec![Permutation::identity(2), p("(1 2)", 2)]).unwrap();
        assert_eq!(h.kernel().order_u64() * h.image().order_u64(), 8);
        assert!(!h.is_injective());
    }
}
