//! Finite fields `GF(p^k)`, the Dickson near-field of order 9, and
//! multiplicative automorphisms of near-fields.
//!
//! Elements of `GF(p^k)` are polynomials of degree `< k` over `Z_p` stored as
//! the base-`p` integer of their coefficients, constant term least
//! significant. Addition is therefore the additive table of `Z_p^k` under
//! the encoding used by [`FiniteGroup::direct_power`].

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::groups::{decode, group_automorphisms, is_prime, FiniteGroup, MAX_GROUP_ORDER};
use crate::ring::NearRing;

/// Largest unit group for which [`mult_automorphisms`] enumerates.
pub const MAX_AUTOMORPHISM_UNITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// `GF(p^k)` reduced modulo `modulus` (monic, coefficients low to high).
    Galois { p: usize, k: usize, modulus: Vec<usize> },
    Dickson9,
    /// Any other near-ring certified by [`validate_nearfield`].
    Other,
}

/// A near-ring in which every nonzero element is a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearField {
    ring: NearRing,
    kind: FieldKind,
}

impl NearField {
    pub fn ring(&self) -> &NearRing {
        &self.ring
    }

    pub fn into_ring(self) -> NearRing {
        self.ring
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }
}

impl Deref for NearField {
    type Target = NearRing;

    fn deref(&self) -> &NearRing {
        &self.ring
    }
}

/// Certifies `ring` as a near-field.
pub fn validate_nearfield(ring: NearRing) -> Result<NearField> {
    if let Some(x) = (1..ring.order()).find(|&x| !ring.units().contains(x)) {
        return Err(Error::Precondition(format!("not a near-field: {x} is not a unit")));
    }
    if ring.order() < 2 {
        return Err(Error::Precondition("a near-field has at least two elements".into()));
    }
    Ok(NearField {
        ring,
        kind: FieldKind::Other,
    })
}

fn poly_rem(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p);
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let q = top * lead_inv % p;
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - q * c % p) % p;
        }
    }
    a
}

fn mod_inverse(a: usize, p: usize) -> usize {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue modulo a prime")
}

fn poly_mul_mod(a: &[usize], b: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn monic(p: usize, d: usize, code: usize) -> Vec<usize> {
    let mut c = decode(code, p, d);
    c.push(1);
    c
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    (1..=k / 2).all(|d| {
        (0..p.pow(d as u32)).all(|code| poly_rem(f.to_vec(), &monic(p, d, code), p).iter().any(|&c| c != 0))
    })
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`
/// over `Z_p`, coefficients low to high; candidates are ordered by the
/// base-`p` integer of their non-leading coefficients.
pub fn irreducible_modulus(p: usize, k: usize) -> Vec<usize> {
    (0..p.pow(k as u32))
        .map(|code| monic(p, k, code))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// `GF(p^k)`.
pub fn gf(p: usize, k: usize) -> Result<NearField> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::Precondition("field degree must be positive".into()));
    }
    let n = (p as u128)
        .checked_pow(k as u32)
        .filter(|&n| n <= MAX_GROUP_ORDER as u128)
        .ok_or_else(|| Error::size("field order", format!("{p}^{k}"), MAX_GROUP_ORDER))? as usize;
    let modulus = irreducible_modulus(p, k);
    let zp = FiniteGroup::cyclic(p)?;
    let add = FiniteGroup::direct_power(&zp, k)?;
    let polys: Vec<Vec<usize>> = (0..n).map(|x| decode(x, p, k)).collect();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let c = poly_mul_mod(&polys[a], &polys[b], &modulus, p);
            mul[a * n + b] = crate::groups::encode(&c, p);
        }
    }
    let name = if k == 1 { format!("GF({p})") } else { format!("GF({p}^{k})") };
    let ring = NearRing::new(add, mul, 1)?.with_name(name);
    let mut field = validate_nearfield(ring)?;
    field.kind = FieldKind::Galois { p, k, modulus };
    Ok(field)
}

/// The Dickson near-field on the carrier of `GF(9)`: `a∘b = a·b` when `b`
/// is a nonzero square, `a³·b` when `b` is a non-square, `0` when `b = 0`.
pub fn dickson9() -> NearField {
    let f = gf(3, 2).expect("GF(9) exists");
    let n = 9;
    let mut square = [false; 9];
    for x in 1..n {
        square[f.mul(x, x)] = true;
    }
    let cube = |a: usize| f.mul(a, f.mul(a, a));
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 1..n {
            mul[a * n + b] = if square[b] { f.mul(a, b) } else { f.mul(cube(a), b) };
        }
    }
    let ring = NearRing::new(f.additive().clone(), mul, 1)
        .expect("Dickson multiplication is a near-ring")
        .with_name("Dickson(9)");
    assert!(!ring.is_ring(), "Dickson near-field is not a field");
    let mut nf = validate_nearfield(ring).expect("Dickson near-ring is a near-field");
    nf.kind = FieldKind::Dickson9;
    nf
}

/// A zero-preserving map that restricts to an automorphism of `(F∖{0}, *)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultAutomorphism {
    image: Vec<usize>,
}

impl MultAutomorphism {
    /// Validates `image` against the multiplication of `field`.
    pub fn new(field: &NearField, image: Vec<usize>) -> Result<Self> {
        let n = field.order();
        if image.len() != n {
            return Err(Error::MultAutomorphism(format!("expected {n} images, found {}", image.len())));
        }
        if image[0] != 0 {
            return Err(Error::MultAutomorphism("0 is not fixed".into()));
        }
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::MultAutomorphism("not a bijection".into()));
            }
        }
        for a in 1..n {
            for b in 1..n {
                if image[field.mul(a, b)] != field.mul(image[a], image[b]) {
                    return Err(Error::MultAutomorphism(format!("fails at ({a}, {b})")));
                }
            }
        }
        Ok(MultAutomorphism { image })
    }

    pub fn identity(order: usize) -> Self {
        MultAutomorphism {
            image: (0..order).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MultAutomorphism) -> MultAutomorphism {
        MultAutomorphism {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    /// Whether the map is also additive.
    pub fn is_additive(&self, field: &NearField) -> bool {
        let n = field.order();
        (0..n).all(|a| (0..n).all(|b| self.image[field.add(a, b)] == field.add(self.image[a], self.image[b])))
    }
}

/// `a ↦ a^(p^j)` on `GF(p^k)`.
pub fn frobenius(field: &NearField, j: usize) -> Result<MultAutomorphism> {
    let FieldKind::Galois { p, k, .. } = field.kind() else {
        return Err(Error::Precondition("Frobenius needs a Galois field".into()));
    };
    let (p, k) = (*p, *k);
    let pow = |a: usize| (1..p).fold(a, |acc, _| field.mul(acc, a));
    let image = (0..field.order())
        .map(|a| (0..j % k).fold(a, |x, _| pow(x)))
        .collect();
    MultAutomorphism::new(field, image)
}

/// All multiplicative automorphisms, identity first, the rest in
/// lexicographic order of image vectors.
pub fn mult_automorphisms(field: &NearField) -> Result<Vec<MultAutomorphism>> {
    let units = field.units();
    if units.len() > MAX_AUTOMORPHISM_UNITS {
        return Err(Error::size("unit group order", units.len(), MAX_AUTOMORPHISM_UNITS));
    }
    let group = units.group();
    let members = units.members();
    let mut out: Vec<MultAutomorphism> = group_automorphisms(&group, usize::MAX)?
        .into_iter()
        .map(|phi| {
            let mut image = vec![0; field.order()];
            for (i, &u) in members.iter().enumerate() {
                image[u] = members[phi[i]];
            }
            MultAutomorphism { image }
        })
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|m| MultAutomorphism::new(field, m.image.clone()).is_ok()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = gf(3, 1).unwrap();
        assert_eq!(f.add(1, 2), 0);
        assert_eq!(f.mul(2, 2), 1);
        assert!(f.is_field());
        assert!(matches!(gf(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(gf(2, 10), Err(Error::Size { .. })));
    }

    #[test]
    fn moduli_are_lex_smallest() {
        assert_eq!(irreducible_modulus(2, 2), vec![1, 1, 1]);
        // x^2 + 1 is irreducible over Z3; x^2 and x^2+2 = (x-1)(x+1) are not
        assert_eq!(irreducible_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(irreducible_modulus(2, 3), vec![1, 1, 0, 1]);
        // brute force over Z2: x^4+x+1 is the first without factors
        assert_eq!(irreducible_modulus(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn gf9_unit_group_cyclic_of_order_8() {
        let f = gf(3, 2).unwrap();
        let u = f.units();
        assert_eq!(u.len(), 8);
        let g = u.group();
        assert!(g.element_orders().contains(&8));
    }

    #[test]
    fn frobenius_maps() {
        let f = gf(2, 2).unwrap();
        assert!(frobenius(&f, 0).unwrap().is_identity());
        let fr = frobenius(&f, 1).unwrap();
        assert_eq!(fr.image(), &[0, 1, 3, 2]);
        assert!(fr.compose(&fr).is_identity());
        assert!(frobenius(&f, 2).unwrap().is_identity());
        let f27 = gf(3, 3).unwrap();
        let fr = frobenius(&f27, 1).unwrap();
        assert!(fr.compose(&fr).compose(&fr).is_identity());
        assert!(!fr.compose(&fr).is_identity());
        assert!(fr.is_additive(&f27));
        assert!(frobenius(&dickson9(), 1).is_err());
    }

    #[test]
    fn dickson_properties() {
        let d = dickson9();
        assert_eq!(d.order(), 9);
        assert!(d.is_nearfield());
        assert!(!d.is_ring());
        assert!(!d.is_mul_commutative());
        for a in 0..9 {
            assert_eq!(d.mul(a, 1), a);
        }
        for b in 1..9 {
            assert!(d.right_translation(b).is_injective());
        }
    }

    fn brute_mult_automorphisms(f: &NearField) -> usize {
        // permutations of the nonzero elements
        fn perms(xs: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == xs.len() {
                out.push(xs.clone());
                return;
            }
            for i in k..xs.len() {
                xs.swap(k, i);
                perms(xs, k + 1, out);
                xs.swap(k, i);
            }
        }
        let n = f.order();
        let mut all = Vec::new();
        perms(&mut (1..n).collect(), 0, &mut all);
        all.into_iter()
            .filter(|p| {
                let img = |a: usize| if a == 0 { 0 } else { p[a - 1] };
                (1..n).all(|a| (1..n).all(|b| img(f.mul(a, b)) == f.mul(img(a), img(b))))
            })
            .count()
    }

    #[test]
    fn automorphism_counts() {
        for (f, expected) in [(gf(3, 1), 1), (gf(5, 1), 2), (gf(2, 2), 2), (gf(2, 1), 1), (gf(3, 2), 4)] {
            let f = f.unwrap();
            let auts = mult_automorphisms(&f).unwrap();
            assert_eq!(auts.len(), expected, "{}", f.name());
            assert!(auts[0].is_identity());
            if f.order() <= 5 {
                assert_eq!(brute_mult_automorphisms(&f), expected);
            }
        }
        // unit group of the Dickson near-field is quaternion, |Aut(Q8)| = 24
        let d = dickson9();
        assert_eq!(mult_automorphisms(&d).unwrap().len(), 24);
        assert_eq!(brute_mult_automorphisms(&d), 24);
    }

    #[test]
    fn invalid_mult_automorphism() {
        let f = gf(5, 1).unwrap();
        assert!(MultAutomorphism::new(&f, vec![0, 2, 1, 3, 4]).is_err());
        assert!(MultAutomorphism::new(&f, vec![0, 1, 3, 2, 4]).is_ok());
        assert!(MultAutomorphism::new(&f, vec![1, 0, 2, 3, 4]).is_err());
    }
}
