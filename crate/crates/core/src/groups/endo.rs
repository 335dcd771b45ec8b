use super::{is_hom, FiniteGroup};
use crate::error::{Error, Result};

/// Default bound on `|End(G)|` for [`endo_monoid`].
pub const DEFAULT_ENDO_CAP: usize = 1 << 20;

/// A group endomorphism stored as its image vector: `image[a] = f(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endo {
    image: Vec<usize>,
}

impl Endo {
    /// Checks the homomorphism law before wrapping `image`.
    pub fn new(group: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if !is_endo(group, &image) {
            return Err(Error::Precondition(format!(
                "map is not an endomorphism of {}",
                group.name()
            )));
        }
        Ok(Endo { image })
    }

    pub(crate) fn from_vec(image: Vec<usize>) -> Self {
        Endo { image }
    }

    pub fn identity(n: usize) -> Self {
        Endo {
            image: (0..n).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Endo { image: vec![0; n] }
    }

    /// Extends images of `group.generators()` to an endomorphism.
    pub fn from_generator_images(group: &FiniteGroup, images: &[usize]) -> Result<Self> {
        group
            .extend_generator_images(group, images)
            .map(Endo::from_vec)
            .ok_or_else(|| Error::Precondition("generator images do not extend to an endomorphism".into()))
    }

    pub fn group_order(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endo) -> Endo {
        Endo {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(|&y| y == 0)
    }

    /// Multiplicative order under composition; `None` if not bijective.
    pub fn order(&self) -> Option<usize> {
        if !self.is_injective() {
            return None;
        }
        let mut f = self.clone();
        let mut k = 1;
        while !f.is_identity() {
            f = self.compose(&f);
            k += 1;
        }
        Some(k)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<Endo> {
        if !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(Endo { image: inv })
    }
}

/// `f ∘ g`, i.e. `x ↦ f(g(x))`.
pub fn compose(f: &Endo, g: &Endo) -> Endo {
    f.compose(g)
}

/// True iff `image` is a homomorphism `G -> G`.
pub fn is_endo(group: &FiniteGroup, image: &[usize]) -> bool {
    is_hom(group, group, image)
}

/// True iff `f` fixes only the identity.
pub fn is_fpf(group: &FiniteGroup, f: &Endo) -> bool {
    debug_assert_eq!(f.group_order(), group.order());
    (1..group.order()).all(|a| f.apply(a) != a)
}

/// All endomorphisms of `group`: the zero map, then the identity, then the
/// rest in lexicographic order of image vectors.
pub fn endo_monoid(group: &FiniteGroup, cap: usize) -> Result<Vec<Endo>> {
    let n = group.order();
    let orders = group.element_orders();
    let gens = group.generators();
    // images of a generator must have order dividing its order
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&h| orders[g] % orders[h] == 0).collect())
        .collect();
    let tuples = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    if tuples > cap.saturating_mul(64) {
        return Err(Error::size("endomorphism enumeration", tuples, cap));
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    let mut images = vec![0usize; gens.len()];
    'outer: loop {
        for (slot, &i) in pick.iter().enumerate() {
            images[slot] = choices[slot][i];
        }
        if let Some(map) = group.extend_generator_images(group, &images) {
            out.push(Endo::from_vec(map));
            if out.len() > cap {
                return Err(Error::size("|End(G)|", format!("more than {cap}"), cap));
            }
        }
        for slot in (0..pick.len()).rev() {
            pick[slot] += 1;
            if pick[slot] < choices[slot].len() {
                continue 'outer;
            }
            pick[slot] = 0;
        }
        break;
    }
    out.sort();
    let id = Endo::identity(n);
    let zero = Endo::zero(n);
    out.retain(|e| *e != id && *e != zero);
    let mut ordered = vec![zero];
    if n > 1 {
        ordered.push(id);
    }
    ordered.extend(out);
    Ok(ordered)
}

/// Automorphisms of `group` in the [`endo_monoid`] order (identity first).
pub fn automorphisms(group: &FiniteGroup, cap: usize) -> Result<Vec<Endo>> {
    let mut all = endo_monoid(group, cap)?;
    all.retain(|e| e.is_injective());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_is_endo(g: &FiniteGroup, img: &[usize]) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| img[g.op(a, b)] == g.op(img[a], img[b])))
    }

    fn brute_endos(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let total = n.pow(n as u32);
        (0..total)
            .map(|code| super::super::decode(code, n, n))
            .filter(|img| brute_is_endo(g, img))
            .collect()
    }

    #[test]
    fn endo_examples_z3() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(is_endo(&z3, &[0, 1, 2]));
        assert!(is_endo(&z3, &[0, 0, 0]));
        assert!(is_endo(&z3, &[0, 2, 1]));
        assert!(!is_endo(&z3, &[0, 1, 1]));
        assert!(!brute_is_endo(&z3, &[0, 1, 1]));
        let neg = Endo::new(&z3, vec![0, 2, 1]).unwrap();
        assert!(is_fpf(&z3, &neg));
        assert!(!is_fpf(&z3, &Endo::identity(3)));
        assert_eq!(endo_monoid(&z3, DEFAULT_ENDO_CAP).unwrap().len(), 3);
    }

    #[test]
    fn monoid_sizes_match_brute_force() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_power(&z2, 2).unwrap();
        assert_eq!(brute_endos(&v4).len(), 16);
        let monoid = endo_monoid(&v4, DEFAULT_ENDO_CAP).unwrap();
        assert_eq!(monoid.len(), 16);
        assert!(monoid[0].is_zero());
        assert!(monoid[1].is_identity());
        assert!(monoid[2..].windows(2).all(|w| w[0] < w[1]));
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(endo_monoid(&z6, DEFAULT_ENDO_CAP).unwrap().len(), brute_endos(&z6).len());
        let s3 = FiniteGroup::from_rows(
            "S3",
            &[
                vec![0, 1, 2, 3, 4, 5],
                vec![1, 2, 0, 4, 5, 3],
                vec![2, 0, 1, 5, 3, 4],
                vec![3, 5, 4, 0, 2, 1],
                vec![4, 3, 5, 1, 0, 2],
                vec![5, 4, 3, 2, 1, 0],
            ],
        )
        .unwrap();
        // S3: 6 automorphisms, 3 maps onto order-2 subgroups, zero map
        assert_eq!(brute_endos(&s3).len(), 10);
        assert_eq!(endo_monoid(&s3, DEFAULT_ENDO_CAP).unwrap().len(), 10);
        assert_eq!(automorphisms(&s3, DEFAULT_ENDO_CAP).unwrap().len(), 6);
    }

    #[test]
    fn compose_convention_and_identity() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_power(&z2, 2).unwrap();
        let monoid = endo_monoid(&v4, DEFAULT_ENDO_CAP).unwrap();
        let id = Endo::identity(4);
        for f in &monoid {
            assert_eq!(compose(&id, f), *f);
            assert_eq!(compose(f, &id), *f);
        }
        // f∘g applies g first
        let f = Endo::new(&v4, vec![0, 2, 1, 3]).unwrap();
        let g = Endo::new(&v4, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(compose(&f, &g).image(), &[0, 2, 0, 2]);
        assert_eq!(compose(&g, &f).image(), &[0, 0, 1, 1]);
    }

    #[test]
    fn cap_is_reported() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::direct_power(&z2, 4).unwrap();
        match endo_monoid(&v, 100) {
            Err(Error::Size { bound, .. }) => assert_eq!(bound, 100),
            other => panic!("expected size error, got {other:?}"),
        }
    }
}
