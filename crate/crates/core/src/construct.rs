//! Near-ring constructions.
//!
//! The generic builder takes one endomorphism `s_b` per element `b` of a
//! group `M` with `s_b(m) = b` for a fixed base point `m`, and multiplies by
//! `a*b = s_b(a)`. Every f-near-ring arises this way with `m = 1` and
//! `s_b = ψ_b`. The remaining builders are concrete instances.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::fields::{MultAutomorphism, NearField};
use crate::groups::{decode, encode, is_endo, is_fpf, is_prime, Endo, FiniteGroup, MAX_GROUP_ORDER};
use crate::ring::NearRing;

/// One endomorphism of `group` per element, `assignment[b](base) = b`.
#[derive(Debug, Clone)]
pub struct SemigroupSpec {
    group: FiniteGroup,
    assignment: Vec<Endo>,
    base: usize,
}

impl SemigroupSpec {
    /// Checks coverage, the zero and identity entries, that every entry is
    /// an endomorphism, and closure `s_c ∘ s_b = s_{s_c(b)}`.
    pub fn new(group: FiniteGroup, assignment: Vec<Endo>, base: usize) -> Result<Self> {
        let n = group.order();
        if assignment.len() != n || base >= n {
            return Err(Error::Semigroup(format!(
                "need {n} entries and a base point below {n}, got {} and {base}",
                assignment.len()
            )));
        }
        for (b, s) in assignment.iter().enumerate() {
            if s.group_order() != n || !is_endo(&group, s.image()) {
                return Err(Error::Semigroup(format!("entry for {b} is not an endomorphism")));
            }
            if s.apply(base) != b {
                return Err(Error::Semigroup(format!(
                    "coverage: entry for {b} sends the base point to {}",
                    s.apply(base)
                )));
            }
        }
        if !assignment[0].is_zero() {
            return Err(Error::Semigroup("entry for 0 is not the zero map".into()));
        }
        if !assignment[base].is_identity() {
            return Err(Error::Semigroup("entry for the base point is not the identity".into()));
        }
        let spec = SemigroupSpec {
            group,
            assignment,
            base,
        };
        if let Some((c, b)) = spec.closure_failure() {
            return Err(Error::Semigroup(format!("closure: s_{c} o s_{b} is not an entry")));
        }
        Ok(spec)
    }

    /// `s_c ∘ s_b` and `s_{s_c(b)}` are endomorphisms, so they agree iff they
    /// agree on generators.
    fn closure_failure(&self) -> Option<(usize, usize)> {
        let n = self.group.order();
        let gens = self.group.generators();
        for c in 0..n {
            let sc = &self.assignment[c];
            for b in 0..n {
                let sb = &self.assignment[b];
                let target = &self.assignment[sc.apply(b)];
                if gens.iter().any(|&g| sc.apply(sb.apply(g)) != target.apply(g)) {
                    return Some((c, b));
                }
            }
        }
        None
    }

    /// The right translations of `n` with base point `1`.
    pub fn from_near_ring(n: &NearRing) -> Self {
        SemigroupSpec {
            group: n.additive().clone(),
            assignment: (0..n.order()).map(|b| n.right_translation(b)).collect(),
            base: n.one(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn assignment(&self) -> &[Endo] {
        &self.assignment
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Elements whose entry is bijective, i.e. the orbit of the base point
    /// under the automorphism part.
    pub fn bijective_points(&self) -> ElementSet {
        ElementSet::from_indices(
            self.group.order(),
            (0..self.group.order()).filter(|&b| self.assignment[b].is_injective()),
        )
    }
}

/// `a*b = s_b(a)` with identity the base point.
pub fn build_from_semigroup(spec: &SemigroupSpec) -> Result<NearRing> {
    let n = spec.group.order();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = spec.assignment[b].apply(a);
        }
    }
    let ring = NearRing::new(spec.group.clone(), mul, spec.base)?;
    if *ring.units().as_set() != spec.bijective_points() {
        return Err(Error::Semigroup("bijective entries do not match the units".into()));
    }
    Ok(ring.with_name(format!("semigroup near-ring on {}", spec.group.name())))
}

/// Bijective entries form a group acting without fixed points: every
/// bijective entry other than the identity is fixed-point-free.
pub fn has_fpf_unit_action(spec: &SemigroupSpec) -> bool {
    let g = &spec.group;
    let autos = spec.bijective_points();
    // a bijective composite of entries is again a bijective entry by closure
    let closed = autos
        .iter()
        .all(|a| autos.iter().all(|b| autos.contains(spec.assignment[a].apply(b))));
    closed
        && autos
            .iter()
            .all(|b| b == spec.base || is_fpf(g, &spec.assignment[b]))
}

/// The orbit of the base point under the bijective entries, with 0, is an
/// additive subgroup.
pub fn has_additive_unit_orbit(spec: &SemigroupSpec) -> bool {
    let mut h = spec.bijective_points();
    h.insert(0);
    let closed = h.iter().all(|a| h.iter().all(|b| h.contains(spec.group.op(a, b))));
    closed
}

fn power_group(base: &FiniteGroup, k: usize) -> Result<FiniteGroup> {
    if k == 1 {
        Ok(base.clone())
    } else {
        FiniteGroup::direct_power(base, k)
    }
}

/// The twisted power of a near-field `F` on `F^k`:
///
/// `x * a = (x_1 α_1(a_k), …, x_{k-1} α_{k-1}(a_k), x_k a_k)` when
/// `a_1 = … = a_{k-1} = 0`, and `(x_k a_1, …, x_k a_k)` otherwise.
///
/// Coordinate `i` of `F^k` is digit `i - 1` of the mixed-radix index; the
/// result is an af-near-ring whose units form the last coordinate axis.
pub fn twisted_power(field: &NearField, k: usize, alphas: &[MultAutomorphism]) -> Result<NearRing> {
    if k == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    if alphas.len() + 1 != k {
        return Err(Error::Precondition(format!("need {} automorphisms, got {}", k - 1, alphas.len())));
    }
    for a in alphas {
        MultAutomorphism::new(field, a.image().to_vec())?;
    }
    let q = field.order();
    let n = q
        .checked_pow(k as u32)
        .filter(|&n| n <= MAX_GROUP_ORDER)
        .ok_or_else(|| Error::size("twisted power order", format!("{q}^{k}"), MAX_GROUP_ORDER))?;
    let add = power_group(field.additive(), k)?;
    let xs: Vec<Vec<usize>> = (0..n).map(|x| decode(x, q, k)).collect();
    let mut mul = vec![0; n * n];
    let mut out = vec![0; k];
    for (ai, a) in xs.iter().enumerate() {
        let last = a[k - 1];
        let on_axis = a[..k - 1].iter().all(|&c| c == 0);
        let twists: Vec<usize> = alphas.iter().map(|al| al.apply(last)).collect();
        for (xi, x) in xs.iter().enumerate() {
            if on_axis {
                for i in 0..k - 1 {
                    out[i] = field.mul(x[i], twists[i]);
                }
                out[k - 1] = field.mul(x[k - 1], last);
            } else {
                for i in 0..k {
                    out[i] = field.mul(x[k - 1], a[i]);
                }
            }
            mul[xi * n + ai] = encode(&out, q);
        }
    }
    let one = field.one() * q.pow(k as u32 - 1);
    let twist_names: Vec<String> = alphas
        .iter()
        .map(|a| if a.is_identity() { "id".into() } else { format!("{:?}", a.image()) })
        .collect();
    Ok(NearRing::new(add, mul, one)?.with_name(format!(
        "twisted power {}^{k} [{}]",
        field.name(),
        twist_names.join(", ")
    )))
}

/// An endomorphism of `Z_p^k` given by a `k × k` matrix acting on column
/// vectors; row `i` computes coordinate `i`, i.e. digit `i` of the index.
pub fn linear_endo(group: &FiniteGroup, p: usize, matrix: &[Vec<i64>]) -> Result<Endo> {
    let k = matrix.len();
    if matrix.iter().any(|r| r.len() != k) || p.checked_pow(k as u32) != Some(group.order()) {
        return Err(Error::Precondition("matrix shape does not match the group".into()));
    }
    let pi = p as i64;
    let image = (0..group.order())
        .map(|x| {
            let v = decode(x, p, k);
            let w: Vec<usize> = matrix
                .iter()
                .map(|row| row.iter().zip(&v).map(|(&m, &c)| m * c as i64).sum::<i64>().rem_euclid(pi) as usize)
                .collect();
            encode(&w, p)
        })
        .collect();
    Endo::new(group, image)
}

/// Candidate semigroup data for an order-81 f-near-ring with four units
/// whose units plus zero are not additively closed.
///
/// `M = Z_3^4`, `m = (0,0,0,1)`. The automorphism part is generated by a
/// fixed-point-free matrix of order 4 in `GL(4,3)`; the orbit of `m` is
/// `Γ = {±(0,0,0,1), ±(0,0,1,0)}`. Every `n ∉ Γ` gets the singular matrix
/// with rows `(0,0,n2,n1), (0,0,-n1,n2), (0,0,n4,n3), (0,0,-n3,n4)`.
///
/// Returns the group, one endomorphism per element and the base point.
pub fn order81_data() -> (FiniteGroup, Vec<Endo>, usize) {
    let z3 = FiniteGroup::cyclic(3).expect("Z3");
    let g = FiniteGroup::direct_power(&z3, 4).expect("Z3^4");
    let m = encode(&[0, 0, 0, 1], 3);
    let gen = order81_unit_generator(&g);
    let mut assignment: Vec<Option<Endo>> = vec![None; 81];
    let mut a = Endo::identity(81);
    for _ in 0..4 {
        assignment[a.apply(m)] = Some(a.clone());
        a = gen.compose(&a);
    }
    for (b, slot) in assignment.iter_mut().enumerate() {
        if slot.is_some() {
            continue;
        }
        let n: Vec<i64> = decode(b, 3, 4).into_iter().map(|c| c as i64).collect();
        let rows = vec![
            vec![0, 0, n[1], n[0]],
            vec![0, 0, -n[0], n[1]],
            vec![0, 0, n[3], n[2]],
            vec![0, 0, -n[2], n[3]],
        ];
        *slot = Some(linear_endo(&g, 3, &rows).expect("singular matrix"));
    }
    let assignment = assignment.into_iter().map(|s| s.expect("every point assigned")).collect();
    (g, assignment, m)
}

/// The order-4 fixed-point-free automorphism generating the unit part of
/// [`order81_data`].
pub fn order81_unit_generator(g: &FiniteGroup) -> Endo {
    linear_endo(
        g,
        3,
        &[vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]],
    )
    .expect("generator matrix")
}

/// [`order81_data`] checked as a semigroup.
///
/// This fails: the singular matrices are not closed under products. For
/// `n = (0,0,1,1)` the square of its matrix is singular but sends `m` to
/// `(0,0,2,0) ∈ Γ`, which already belongs to a unit map, so the error names
/// the pair `(36, 36)`. An exhaustive search over the same unit group and
/// base point finds no completion at all.
pub fn order81_f_not_a_spec() -> Result<SemigroupSpec> {
    let (g, assignment, m) = order81_data();
    SemigroupSpec::new(g, assignment, m)
}

/// The near-ring of [`order81_f_not_a_spec`], or its closure error.
pub fn order81_f_not_a() -> Result<NearRing> {
    Ok(build_from_semigroup(&order81_f_not_a_spec()?)?.with_name("order-81 f-near-ring (Z3^4)"))
}

/// Semigroup data of the a-near-ring on the Heisenberg group of order 27.
///
/// With generators `x, y, z` and base point `m = z`: `s_z` is the identity,
/// `s_{z²}` sends `x ↦ x², y ↦ y, z ↦ z²`, and every other `s_a` kills `x, y`
/// and sends `z ↦ a`.
pub fn heisenberg_spec() -> Result<SemigroupSpec> {
    let h = FiniteGroup::heisenberg3();
    let (x, y, z) = (1, 3, 9);
    debug_assert_eq!(h.generators(), &[x, y, z]);
    let x2 = h.op(x, x);
    let z2 = h.op(z, z);
    let mut assignment = Vec::with_capacity(27);
    for a in 0..27 {
        let images = if a == z {
            [x, y, z]
        } else if a == z2 {
            [x2, y, z2]
        } else {
            [0, 0, a]
        };
        assignment.push(Endo::from_generator_images(&h, &images)?);
    }
    SemigroupSpec::new(h, assignment, z)
}

/// The order-27 a-near-ring on the non-abelian Heisenberg group.
pub fn heisenberg_a_near_ring() -> Result<NearRing> {
    Ok(build_from_semigroup(&heisenberg_spec()?)?.with_name("order-27 a-near-ring (H27)"))
}

/// Semigroup data on `Z_p^k` with `m = (0,…,0,1)`: scalar matrices
/// `λ·I` for the points `λm`, and for every other point `b` the matrix
/// whose only nonzero column is the last one, equal to `b`.
pub fn last_column_spec(p: usize, k: usize) -> Result<SemigroupSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    let zp = FiniteGroup::cyclic(p)?;
    let g = power_group(&zp, k)?;
    let n = g.order();
    let m = p.pow(k as u32 - 1);
    let assignment = (0..n)
        .map(|b| {
            let v = decode(b, p, k);
            let rows: Vec<Vec<i64>> = if v[..k - 1].iter().all(|&c| c == 0) {
                (0..k)
                    .map(|i| (0..k).map(|j| if i == j { v[k - 1] as i64 } else { 0 }).collect())
                    .collect()
            } else {
                (0..k)
                    .map(|i| (0..k).map(|j| if j == k - 1 { v[i] as i64 } else { 0 }).collect())
                    .collect()
            };
            linear_endo(&g, p, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    SemigroupSpec::new(g, assignment, m)
}

/// af-near-ring of order `p^k` with `p - 1` units.
pub fn last_column_near_ring(p: usize, k: usize) -> Result<NearRing> {
    Ok(build_from_semigroup(&last_column_spec(p, k)?)?.with_name(format!("last-column near-ring Z{p}^{k}")))
}

/// Which composition realizes the product of `M₀(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    /// `(f*g)(x) = f(g(x))`.
    ApplyRightFirst,
    /// `(f*g)(x) = g(f(x))`.
    ApplyLeftFirst,
}

/// `M₀(G)`: maps `G → G` fixing 0, pointwise addition, composition as
/// multiplication. The map `f` has index `Σ f(i) |G|^(i-1)` over `i ≥ 1`.
///
/// Both composition orders are tried and the one satisfying the near-ring
/// axioms is kept; [`m0_with_convention`] reports which.
pub fn m0(g: &FiniteGroup) -> Result<NearRing> {
    m0_with_convention(g).map(|(n, _)| n)
}

pub fn m0_with_convention(g: &FiniteGroup) -> Result<(NearRing, Composition)> {
    let q = g.order();
    if q == 1 {
        return Err(Error::Precondition("M0 of the trivial group has one element".into()));
    }
    let n = q
        .checked_pow(q as u32 - 1)
        .filter(|&n| n <= MAX_GROUP_ORDER)
        .ok_or_else(|| Error::size("M0 order", format!("{q}^{}", q - 1), MAX_GROUP_ORDER))?;
    let add = power_group(g, q - 1)?;
    let maps: Vec<Vec<usize>> = (0..n)
        .map(|x| std::iter::once(0).chain(decode(x, q, q - 1)).collect())
        .collect();
    let index = |f: &[usize]| encode(&f[1..], q);
    let one = index(&(0..q).collect::<Vec<_>>());
    let mut last_err = None;
    for conv in [Composition::ApplyRightFirst, Composition::ApplyLeftFirst] {
        let mut mul = vec![0; n * n];
        let mut h = vec![0; q];
        for a in 0..n {
            for b in 0..n {
                let (f, gm) = (&maps[a], &maps[b]);
                for x in 0..q {
                    h[x] = match conv {
                        Composition::ApplyRightFirst => f[gm[x]],
                        Composition::ApplyLeftFirst => gm[f[x]],
                    };
                }
                mul[a * n + b] = index(&h);
            }
        }
        match NearRing::new(add.clone(), mul, one) {
            Ok(r) => return Ok((r.with_name(format!("M0({})", g.name())), conv)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two conventions tried"))
}

/// `Z_n` with ordinary multiplication.
pub fn zn_ring(n: usize) -> Result<NearRing> {
    if n < 2 {
        return Err(Error::Precondition("Z_n needs n >= 2".into()));
    }
    let add = FiniteGroup::cyclic(n)?;
    let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
    Ok(NearRing::new(add, mul, 1)?.with_name(format!("Z{n}")))
}

/// `Z_2^k` with componentwise multiplication (bitwise and).
pub fn boolean_ring(k: usize) -> Result<NearRing> {
    if k == 0 || k > 9 {
        return Err(Error::Precondition("boolean ring rank must be in 1..=9".into()));
    }
    let z2 = FiniteGroup::cyclic(2)?;
    let add = power_group(&z2, k)?;
    let n = 1 << k;
    let mul = (0..n * n).map(|i| (i / n) & (i % n)).collect();
    Ok(NearRing::new(add, mul, n - 1)?.with_name(format!("Z2^{k} (boolean)")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{dickson9, frobenius, gf, mult_automorphisms};
    use crate::ring::isomorphic;

    #[test]
    fn trivial_semigroup_gives_z2() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let spec = SemigroupSpec::new(z2, vec![Endo::zero(2), Endo::identity(2)], 1).unwrap();
        let n = build_from_semigroup(&spec).unwrap();
        assert!(n.is_field());
        assert!(has_fpf_unit_action(&spec));
        assert!(has_additive_unit_orbit(&spec));
    }

    #[test]
    fn spec_rejections() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let neg = Endo::new(&z3, vec![0, 2, 1]).unwrap();
        // coverage: entry for 2 sends 1 to 1
        let bad = SemigroupSpec::new(z3.clone(), vec![Endo::zero(3), Endo::identity(3), Endo::identity(3)], 1);
        assert!(matches!(bad, Err(Error::Semigroup(_))));
        assert!(SemigroupSpec::new(z3.clone(), vec![Endo::zero(3), Endo::identity(3), neg.clone()], 1).is_ok());
        // closure: on Z2^2 with base 1, s_3 ∘ s_3 sends 2 to 3 but s_2 kills 2
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::direct_power(&z2, 2).unwrap();
        let s2 = Endo::new(&v, vec![0, 2, 0, 2]).unwrap();
        let s3 = Endo::new(&v, vec![0, 3, 1, 2]).unwrap();
        let r = SemigroupSpec::new(v, vec![Endo::zero(4), Endo::identity(4), s2, s3], 1);
        assert!(matches!(r, Err(Error::Semigroup(m)) if m.contains("closure")));
    }

    #[test]
    fn order81_data_is_not_closed() {
        let (g, assignment, m) = order81_data();
        let gen = order81_unit_generator(&g);
        assert!(is_fpf(&g, &gen));
        assert_eq!(gen.order(), Some(4));
        let gamma: Vec<usize> = [[0, 0, 0, 1], [0, 0, 2, 0], [0, 0, 0, 2], [0, 0, 1, 0]]
            .iter()
            .map(|v| encode(v, 3))
            .collect();
        let mut a = Endo::identity(81);
        for &x in &gamma {
            assert_eq!(a.apply(m), x);
            a = gen.compose(&a);
        }
        // the orbit plus zero is not a subgroup
        assert!(!gamma.contains(&g.op(gamma[0], gamma[3])));
        let bad = encode(&[0, 0, 1, 1], 3);
        assert_eq!(bad, 36);
        let sq = assignment[bad].compose(&assignment[bad]);
        assert!(!sq.is_injective());
        assert_eq!(sq.apply(m), encode(&[0, 0, 2, 0], 3));
        match order81_f_not_a_spec() {
            Err(Error::Semigroup(msg)) => assert!(msg.contains("s_36 o s_36"), "{msg}"),
            other => panic!("expected a closure error, got {other:?}"),
        }
        assert!(order81_f_not_a().is_err());
    }

    #[test]
    fn heisenberg_example() {
        let spec = heisenberg_spec().unwrap();
        assert!(has_additive_unit_orbit(&spec));
        let n = heisenberg_a_near_ring().unwrap();
        let (y, z) = (3, 9);
        let z2 = n.add(z, z);
        assert_eq!(n.units().members(), &[z, z2]);
        assert!(n.is_a().holds);
        let f = n.is_f();
        assert!(!f.holds);
        assert_eq!(f.witness, Some((z2, y)));
        assert!(!n.is_ring());
    }

    #[test]
    fn last_column_examples() {
        let spec = last_column_spec(3, 2).unwrap();
        assert!(has_fpf_unit_action(&spec) && has_additive_unit_orbit(&spec));
        let n = last_column_near_ring(3, 2).unwrap();
        assert_eq!(n.units().len(), 2);
        let f3 = gf(3, 1).unwrap();
        let id = mult_automorphisms(&f3).unwrap().remove(0);
        let t = twisted_power(&f3, 2, &[id]).unwrap();
        assert!(isomorphic(&n, &t).is_some());
        let v = last_column_near_ring(2, 3).unwrap();
        assert_eq!(v.units().len(), 1);
        assert!(v.is_f().vacuous);
    }

    #[test]
    fn twisted_power_small_cases() {
        let f3 = gf(3, 1).unwrap();
        let t1 = twisted_power(&f3, 1, &[]).unwrap();
        assert_eq!(t1.mul_table(), f3.mul_table());
        let id = MultAutomorphism::identity(3);
        let t = twisted_power(&f3, 2, &[id]).unwrap();
        assert_eq!(t.order(), 9);
        assert_eq!(t.units().len(), 2);
        assert!(t.is_a().holds && t.is_f().holds);
        assert!(!t.is_ring() && !t.is_nearfield());
        let f4 = gf(2, 2).unwrap();
        let t = twisted_power(&f4, 2, &[frobenius(&f4, 1).unwrap()]).unwrap();
        assert_eq!((t.order(), t.units().len()), (16, 3));
        assert!(t.is_a().holds && t.is_f().holds);
        assert!(twisted_power(&f3, 0, &[]).is_err());
        assert!(twisted_power(&f3, 3, &[]).is_err());
        let d = dickson9();
        let bogus = MultAutomorphism::identity(3);
        assert!(twisted_power(&d, 2, &[bogus]).is_err());
    }

    #[test]
    fn m0_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (m, conv) = m0_with_convention(&z2).unwrap();
        assert_eq!(m.order(), 2);
        assert!(m.is_field());
        assert_eq!(conv, Composition::ApplyRightFirst);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let (m, conv) = m0_with_convention(&z3).unwrap();
        assert_eq!(conv, Composition::ApplyRightFirst);
        assert_eq!(m.order(), 9);
        assert_eq!(m.units().len(), 2);
        assert!(m.is_a().holds);
        assert!(!m.is_f().holds);
        let g9 = gf(3, 2).unwrap();
        assert!(isomorphic(&m, &g9).is_none());
        let t = twisted_power(&gf(3, 1).unwrap(), 2, &[MultAutomorphism::identity(3)]).unwrap();
        assert!(isomorphic(&m, &t).is_none());
    }

    #[test]
    fn ring_corpus_is_valid() {
        for n in 2..=12 {
            let r = zn_ring(n).unwrap();
            assert!(r.is_ring());
            assert_eq!(r.is_field(), is_prime(n as u64));
        }
        for k in 1..=3 {
            let b = boolean_ring(k).unwrap();
            assert!(b.is_ring());
            assert_eq!(b.units().len(), 1);
        }
    }
}
