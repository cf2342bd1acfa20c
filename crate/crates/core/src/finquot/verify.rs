//! The finite-quotient checks: the mod 4 exact sequence, the congruence
//! description of Γ mod 4p5, and the torsion obstruction table.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{
    check_condition, closure, filter_codes, in_c4, index, is_unipotent_p5, kernel_lie_element, CongCondition, Engine, FinGroup, FinMat,
    FinquotError, Lie,
};
use crate::matgrp::{monodromy_generators, Mat2, Sym};
use crate::qfield::{QuadElt, ResidueElt, ResidueRing};

fn reduce_all(ms: &[Mat2], ring: ResidueRing) -> Result<Vec<FinMat>, FinquotError> {
    ms.iter().map(|m| FinMat::reduce(m, ring)).collect()
}

/// Images of z0, σ, μ, τ, η.
pub fn sl_generators(ring: ResidueRing) -> Result<Vec<FinMat>, FinquotError> {
    reduce_all(&Sym::ALL.map(Sym::matrix), ring)
}

/// Images of σ, μ, τ, η (enough to generate PSL2 and, with z0, SL2).
pub fn psl_generators(ring: ResidueRing) -> Result<Vec<FinMat>, FinquotError> {
    reduce_all(&[Sym::Sigma, Sym::Mu, Sym::Tau, Sym::Eta].map(Sym::matrix), ring)
}

/// Images of γ_α, γ_α', γ_β, γ_β'.
pub fn gamma_generators(ring: ResidueRing) -> Result<Vec<FinMat>, FinquotError> {
    let ms: Vec<Mat2> = monodromy_generators().into_iter().map(|g| g.evaluated).collect();
    reduce_all(&ms, ring)
}

/// z0, σ, τ, η^2, μ^3: elements of SL2(O_o).
pub fn oo_generators() -> Vec<Mat2> {
    vec![Mat2::z0(), Mat2::sigma(), Mat2::tau(), Mat2::eta().pow(2), Mat2::mu().pow(3)]
}

/// SL2(O/4p5) and the image of Γ in it.
pub struct MonodromyQuotient {
    pub g: FinGroup,
    pub h: FinGroup,
}

impl MonodromyQuotient {
    pub fn compute(engine: &Engine) -> Result<Self, FinquotError> {
        let r = ResidueRing::Mod4P5;
        let g = engine.closure(r, &sl_generators(r)?, false)?;
        let h = engine.closure(r, &gamma_generators(r)?, false)?;
        Ok(MonodromyQuotient { g, h })
    }

    /// Membership of an exact matrix in the image of Γ.
    pub fn in_gamma(&self, m: &Mat2) -> Result<bool, FinquotError> {
        Ok(self.h.contains(&FinMat::reduce(m, ResidueRing::Mod4P5)?))
    }

    /// Membership of ±m, i.e. of the class of m in the image of Γ in PSL.
    pub fn in_gamma_psl(&self, m: &Mat2) -> Result<bool, FinquotError> {
        let r = FinMat::reduce(m, ResidueRing::Mod4P5)?;
        Ok(self.h.contains(&r) || self.h.contains(&r.neg()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mod4SequenceReport {
    pub sl2_f4_order: usize,
    pub sl2_r4_order: usize,
    pub kernel_order: usize,
    pub quotient_order: usize,
    /// Every kernel element is I + 2M with M of trace zero.
    pub kernel_trace_zero: bool,
    /// I + 2M -> M is a bijection onto sl2(F4) and turns products into sums.
    pub kernel_isomorphic_to_lie: bool,
    pub kernel_exponent_two: bool,
    pub pullback_order: usize,
    pub oo_image_order: usize,
    pub oo_image_is_pullback: bool,
}

fn lie_add(a: &Lie, b: &Lie) -> Lie {
    [0, 1, 2, 3].map(|i| ((a[i].0 + b[i].0) % 2, (a[i].1 + b[i].1) % 2))
}

/// All trace-zero matrices over F4, as Lie elements.
fn all_lie() -> Vec<Lie> {
    let f4 = [(0u8, 0u8), (1, 0), (0, 1), (1, 1)];
    let mut v = vec![];
    for &x1 in &f4 {
        for &x2 in &f4 {
            for &x3 in &f4 {
                v.push([x1, x2, x3, x1]);
            }
        }
    }
    v
}

/// Mod 2 image lies in SL2(F2).
fn in_pullback(m: &FinMat) -> bool {
    check_condition(m, CongCondition::Mod2InF2).unwrap_or(false)
}

pub fn verify_mod4_sequence(engine: &Engine) -> Result<Mod4SequenceReport, FinquotError> {
    let f4 = engine.closure(ResidueRing::Mod2, &sl_generators(ResidueRing::Mod2)?, false)?;
    let r4 = engine.closure(ResidueRing::Mod4, &sl_generators(ResidueRing::Mod4)?, false)?;
    let kernel: Vec<FinMat> = r4.iter().filter(|m| m.mod2().is_identity()).collect();
    let lies: Vec<Option<Lie>> = kernel.iter().map(kernel_lie_element).collect();
    let kernel_trace_zero = lies.iter().all(|x| x.is_some_and(|x| x[0] == x[3]));
    let image: HashSet<Lie> = lies.iter().flatten().copied().collect();
    let bijective = image.len() == kernel.len() && image == all_lie().into_iter().collect();
    let additive = kernel.iter().all(|a| {
        kernel.iter().all(|b| {
            let (la, lb) = (kernel_lie_element(a).unwrap(), kernel_lie_element(b).unwrap());
            kernel_lie_element(&a.mul(b)) == Some(lie_add(&la, &lb))
        })
    });
    let kernel_exponent_two = kernel.iter().all(|m| m.mul(m).is_identity());
    let pullback: BTreeSet<u32> = r4.iter().filter(in_pullback).map(|m| m.code()).collect();
    let oo = engine.closure(ResidueRing::Mod4, &reduce_all(&oo_generators(), ResidueRing::Mod4)?, false)?;
    let oo_set: BTreeSet<u32> = oo.codes().iter().copied().collect();
    Ok(Mod4SequenceReport {
        sl2_f4_order: f4.order(),
        sl2_r4_order: r4.order(),
        kernel_order: kernel.len(),
        quotient_order: r4.order() / kernel.len().max(1),
        kernel_trace_zero,
        kernel_isomorphic_to_lie: bijective && additive,
        kernel_exponent_two,
        pullback_order: pullback.len(),
        oo_image_order: oo.order(),
        oo_image_is_pullback: oo_set == pullback,
    })
}

/// Condition on the mod 4 image extending C4 from the kernel to the whole
/// pullback of SL2(F2).
///
/// Write g = A + BX over Z/4 with B even, let ḡ = A mod 2 in SL2(F2) and
/// β = B/2 mod 2, and put N = ḡ⁻¹β. Then g passes iff
/// N11 + N12 + N21 equals the sign of ḡ as a permutation of the three
/// nonzero vectors of F2² (1 exactly for the involutions). On the kernel
/// (ḡ = I) this is the C4 trace condition.
pub fn mod4_extended_condition(g: &FinMat) -> bool {
    debug_assert_eq!(g.ring, ResidueRing::Mod4);
    if !in_pullback(g) {
        return false;
    }
    let e = g.entries();
    let a: Vec<u32> = e.iter().map(|x| x.coords().0 % 2).collect();
    let beta: Vec<u32> = e.iter().map(|x| (x.coords().1 / 2) % 2).collect();
    // inverse over F2 of [[a0, a1], [a2, a3]] with det 1 is [[a3, a1], [a2, a0]]
    let inv = [a[3], a[1], a[2], a[0]];
    let n =
        [(inv[0] * beta[0] + inv[1] * beta[2]) % 2, (inv[0] * beta[1] + inv[1] * beta[3]) % 2, (inv[2] * beta[0] + inv[3] * beta[2]) % 2];
    let identity = a == [1, 0, 0, 1];
    let involution = !identity && (a[0] + a[3]).is_multiple_of(2);
    (n[0] + n[1] + n[2]) % 2 == involution as u32
}

/// The nonzero vectors of F5² fixed by every element of a ModP5 group.
fn common_fixed_vectors(ms: &[FinMat]) -> Vec<(u32, u32)> {
    let mut out = vec![];
    for x in 0..5u32 {
        for y in 0..5u32 {
            if (x, y) == (0, 0) {
                continue;
            }
            let fixed = ms.iter().all(|m| {
                let e: Vec<u32> = m.entries().iter().map(|v| v.coords().0).collect();
                (e[0] * x + e[1] * y) % 5 == x && (e[2] * x + e[3] * y) % 5 == y
            });
            if fixed {
                out.push((x, y));
            }
        }
    }
    out
}

fn fixes(m: &FinMat, v: (u32, u32)) -> bool {
    let e: Vec<u32> = m.entries().iter().map(|x| x.coords().0).collect();
    (e[0] * v.0 + e[1] * v.1) % 5 == v.0 && (e[2] * v.0 + e[3] * v.1) % 5 == v.1
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub g_order: usize,
    pub h_order: usize,
    pub index: usize,
    pub p5_image_order: usize,
    pub p5_image_unipotent: bool,
    /// A nonzero vector fixed by the whole mod p5 image.
    pub p5_fixed_vector: Option<(u32, u32)>,
    pub mod2_image_order: usize,
    pub mod2_image_in_f2: bool,
    pub mod4_image_order: usize,
    pub pullback_order: usize,
    pub kernel_intersection_order: usize,
    pub c4_order: usize,
    pub c4_is_subgroup: bool,
    pub kernel_intersection_is_c4: bool,
    pub mu3_in_kernel: bool,
    pub mu3_in_c4: bool,
    pub mu3_in_image: bool,
    /// Elements of G passing the per-element conditions as literally
    /// stated (unipotent mod p5, mod 2 image in F2, C4 on the kernel).
    pub literal_filter_order: usize,
    /// Elements of G fixing the p5 vector and passing the extended mod 4
    /// condition.
    pub k_order: usize,
    pub k_equals_h: bool,
    /// The extended mod 4 condition cut out exactly the mod 4 image of Γ.
    pub mod4_condition_exact: bool,
}

pub fn verify_theorem_a(engine: &Engine, q: &MonodromyQuotient) -> Result<TheoremAReport, FinquotError> {
    let (g, h) = (&q.g, &q.h);
    let idx = index(g, h)?;
    let p5: BTreeSet<u32> = h.iter().map(|m| m.p5_part().code()).collect();
    let p5_mats: Vec<FinMat> = p5.iter().map(|&c| FinMat::from_code(ResidueRing::ModP5, c)).collect();
    let p5_image_unipotent = p5_mats.iter().all(is_unipotent_p5);
    let fixed = common_fixed_vectors(&p5_mats).into_iter().next();

    let mod4: BTreeSet<u32> = h.iter().map(|m| m.mod4_part().code()).collect();
    let mod4_mats: Vec<FinMat> = mod4.iter().map(|&c| FinMat::from_code(ResidueRing::Mod4, c)).collect();
    let mod2: BTreeSet<u32> = mod4_mats.iter().map(|m| m.mod2().code()).collect();
    let mod2_in_f2 = mod2.iter().all(|&c| check_condition(&FinMat::from_code(ResidueRing::Mod2, c), CongCondition::Mod2InF2).unwrap());

    let inter: HashSet<Lie> = mod4_mats.iter().filter_map(kernel_lie_element).collect();
    let c4: HashSet<Lie> = all_lie().into_iter().filter(in_c4).collect();
    let c4_is_subgroup = c4.iter().all(|a| c4.iter().all(|b| c4.contains(&lie_add(a, b))));

    let mu3 = FinMat::reduce(&Mat2::mu().pow(3), ResidueRing::Mod4)?;
    let mu3_lie = kernel_lie_element(&mu3);

    let r4 = engine.closure(ResidueRing::Mod4, &sl_generators(ResidueRing::Mod4)?, false)?;
    let pullback_order = r4.iter().filter(in_pullback).count();
    let extended: BTreeSet<u32> = r4.iter().filter(mod4_extended_condition).map(|m| m.code()).collect();

    let literal = filter_codes(g, |m| {
        let m4 = m.mod4_part();
        check_condition(m, CongCondition::UnipotentModP5).unwrap()
            && in_pullback(&m4)
            && (!m4.mod2().is_identity() || check_condition(&m4, CongCondition::Mod4C4).unwrap())
    });
    let k = match fixed {
        Some(v) => filter_codes(g, |m| fixes(&m.p5_part(), v) && mod4_extended_condition(&m.mod4_part())),
        None => vec![],
    };
    Ok(TheoremAReport {
        g_order: g.order(),
        h_order: h.order(),
        index: idx,
        p5_image_order: p5.len(),
        p5_image_unipotent,
        p5_fixed_vector: fixed,
        mod2_image_order: mod2.len(),
        mod2_image_in_f2: mod2_in_f2,
        mod4_image_order: mod4.len(),
        pullback_order,
        kernel_intersection_order: inter.len(),
        c4_order: c4.len(),
        c4_is_subgroup,
        kernel_intersection_is_c4: inter == c4,
        mu3_in_kernel: mu3_lie.is_some(),
        mu3_in_c4: mu3_lie.is_some_and(|x| in_c4(&x)),
        mu3_in_image: mod4.contains(&mu3.code()),
        literal_filter_order: literal.len(),
        k_order: k.len(),
        k_equals_h: k == h.sorted_codes(),
        mod4_condition_exact: extended == mod4,
    })
}

/// Characteristic polynomial t² + c1 t + c0 of a torsion element.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionRow {
    pub n: u32,
    pub label: &'static str,
    pub c1: QuadElt,
    /// Coefficients (c0, c1, c2) reduced mod p5.
    pub mod_p5: [u32; 3],
    pub unipotent_form: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub rows: Vec<TorsionRow>,
    /// Only n = 5 (and its conjugate) survive the mod p5 test.
    pub only_five_survives: bool,
    pub p5_irreducible_over_f4: bool,
    pub p5_conjugate_irreducible_over_f4: bool,
    pub mod2_image_orders: Vec<u64>,
    pub mod2_image_has_order_five: bool,
    pub z0_in_image: bool,
    pub torsion_free: bool,
}

fn irreducible_over_f4(c1: &QuadElt) -> Result<bool, FinquotError> {
    let r = ResidueRing::Mod2;
    let b = crate::qfield::residue::reduce(c1, r)?;
    let one = r.one();
    Ok(r.elements().all(|t: ResidueElt| !t.mul(&t).add(&b.mul(&t)).add(&one).is_zero()))
}

pub fn torsion_obstruction(q: &MonodromyQuotient) -> Result<TorsionReport, FinquotError> {
    let x = QuadElt::x();
    let one = QuadElt::one();
    let table: Vec<(u32, &'static str, QuadElt)> = vec![
        (2, "(t+1)^2", QuadElt::from_int(2)),
        (3, "t^2 + t + 1", one.clone()),
        (5, "t^2 + X t + 1", x.clone()),
        (5, "t^2 + (1 - X) t + 1", &one - &x),
        (6, "t^2 - t + 1", -one.clone()),
        (10, "t^2 - X t + 1", -x.clone()),
        (10, "t^2 - (1 - X) t + 1", &x - &one),
    ];
    let p = ResidueRing::ModP5;
    let target = [1, 3, 1];
    let mut rows = vec![];
    for (n, label, c1) in table {
        let r = crate::qfield::residue::reduce(&c1, p)?.coords().0;
        let mod_p5 = [1, r, 1];
        rows.push(TorsionRow { n, label, c1, mod_p5, unipotent_form: mod_p5 == target });
    }
    let only_five = rows.iter().all(|r| r.unipotent_form == (r.n == 5));
    let h2: BTreeSet<u32> = q.h.iter().map(|m| m.mod4_part().mod2().code()).collect();
    let orders: Vec<u64> = h2.iter().map(|&c| FinMat::from_code(ResidueRing::Mod2, c).order()).collect();
    let z0 = FinMat::reduce(&Mat2::z0(), ResidueRing::Mod4P5)?;
    let p5_irr = irreducible_over_f4(&x)?;
    let p5c_irr = irreducible_over_f4(&(&one - &x))?;
    let has5 = orders.contains(&5);
    let z0_in = q.h.contains(&z0);
    Ok(TorsionReport {
        only_five_survives: only_five,
        p5_irreducible_over_f4: p5_irr,
        p5_conjugate_irreducible_over_f4: p5c_irr,
        mod2_image_has_order_five: has5,
        z0_in_image: z0_in,
        torsion_free: only_five && p5_irr && p5c_irr && !has5 && !z0_in,
        mod2_image_orders: orders,
        rows,
    })
}

/// The image of Γ mod 2 is SL2(F2), of order six; used by the cover count.
pub fn gamma_mod2_image() -> Result<FinGroup, FinquotError> {
    closure(ResidueRing::Mod2, &gamma_generators(ResidueRing::Mod2)?, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod4_sequence() {
        let r = verify_mod4_sequence(&Engine::sequential()).unwrap();
        assert_eq!((r.sl2_f4_order, r.sl2_r4_order, r.kernel_order), (60, 3840, 64));
        assert!(r.kernel_trace_zero && r.kernel_isomorphic_to_lie && r.kernel_exponent_two);
        assert_eq!(r.pullback_order, 384);
        assert!(r.oo_image_is_pullback);
    }

    #[test]
    fn oo_generators_have_oo_entries() {
        assert!(oo_generators().iter().all(crate::matgrp::entries_in_oo));
    }

    #[test]
    fn gamma_mod2_is_sl2_f2() {
        assert_eq!(gamma_mod2_image().unwrap().order(), 6);
    }
}
