//! Derivatives of parameters along the unramified lines and the unramified part of `μ*`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gl_ring::{m_star_ur_count, Segment, SegmentProduct, SupercuspidalLabel};
use crate::so_params::{seed_decomposition, DiscreteLParameter, Summand};
use crate::symbolics::{HalfInt, UnitSign};

/// Concatenated descending runs `(x_1, x_1-1, ..., y_1, x_2, ..., y_2, ...)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OmegaVector {
    pub entries: Vec<HalfInt>,
}

impl OmegaVector {
    pub fn from_runs(runs: &[(HalfInt, HalfInt)]) -> Self {
        let mut entries = Vec::new();
        for &(x, y) in runs {
            let mut e = x;
            while e >= y {
                entries.push(e);
                e = e - HalfInt::ONE;
            }
        }
        OmegaVector { entries }
    }

    /// Splits wherever the next entry is not the previous one minus 1. Under the
    /// ordering constraint this recovers the runs uniquely.
    pub fn runs(&self) -> Vec<(HalfInt, HalfInt)> {
        let mut out: Vec<(HalfInt, HalfInt)> = Vec::new();
        for &e in &self.entries {
            match out.last_mut() {
                Some(run) if run.1 - HalfInt::ONE == e => run.1 = e,
                _ => out.push((e, e)),
            }
        }
        out
    }

    /// `x_1 ≤ x_2 ≤ ···` and `y_{i-1} ≤ y_i` whenever `x_{i-1} = x_i`.
    pub fn is_valid(&self) -> bool {
        self.runs().windows(2).all(|w| w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 <= w[1].1))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `δ_ρ(z) = Δ_ρ[x_1,y_1] × Δ_ρ[x_2,y_2] × ···`.
    pub fn delta(&self, label: &SupercuspidalLabel) -> SegmentProduct {
        SegmentProduct::new(
            self.runs().into_iter().map(|(x, y)| Segment { label: label.clone(), x, y }).collect(),
        )
    }
}

/// `dim Jac_{ρ|·|^{z'}}(δ_ρ(z))`: the number of ways to read `z'` off the fronts of the
/// runs of `z`, runs being distinguishable. This equals `∏ m!` when `z' = z` and `0`
/// when `z' < z`. Vectors of different length give `0`.
pub fn jac_dim(z_prime: &OmegaVector, z: &OmegaVector) -> u64 {
    if z_prime.len() != z.len() {
        return 0;
    }
    let runs: Vec<Vec<HalfInt>> = z
        .runs()
        .into_iter()
        .map(|r| OmegaVector::from_runs(&[r]).entries)
        .collect();
    let mut memo = HashMap::new();
    shuffle_count(&z_prime.entries, &runs, &mut vec![0; runs.len()], &mut memo)
}

fn shuffle_count(
    target: &[HalfInt],
    runs: &[Vec<HalfInt>],
    pos: &mut Vec<usize>,
    memo: &mut HashMap<Vec<usize>, u64>,
) -> u64 {
    let k: usize = pos.iter().sum();
    if k == target.len() {
        return 1;
    }
    if let Some(v) = memo.get(pos) {
        return *v;
    }
    let mut total = 0;
    for i in 0..runs.len() {
        if pos[i] < runs[i].len() && runs[i][pos[i]] == target[k] {
            pos[i] += 1;
            total += shuffle_count(target, runs, pos, memo);
            pos[i] -= 1;
        }
    }
    memo.insert(pos.clone(), total);
    total
}

/// `a = (a_1, ..., a_d)` with `0 ≤ a_i ≤ 2κ_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KTuple {
    pub a: Vec<u32>,
}

impl KTuple {
    pub fn is_ur(&self) -> bool {
        self.a.iter().all(|&x| x <= 1)
    }

    pub fn ell(&self) -> u32 {
        self.a.iter().sum()
    }
}

/// All tuples of `K^{(ℓ)}` for the given `κ_1 < ··· < κ_d`, lexicographically descending.
pub fn k_tuples(kappas: &[HalfInt], ell: u32) -> Vec<KTuple> {
    fn go(bounds: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<KTuple>) {
        match bounds.split_first() {
            None => {
                if left == 0 {
                    out.push(KTuple { a: cur.clone() });
                }
            }
            Some((&b, rest)) => {
                let room: u32 = rest.iter().sum();
                for v in (0..=b.min(left)).rev() {
                    if left - v > room {
                        break;
                    }
                    cur.push(v);
                    go(rest, left - v, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let bounds: Vec<u32> = kappas.iter().map(|k| (k.twice() + 1) as u32).collect();
    let mut out = Vec::new();
    go(&bounds, ell, &mut Vec::new(), &mut out);
    out
}

/// `K^{(ℓ)}_{φ,χ}`.
pub fn k_sets(phi: &DiscreteLParameter, chi: &SupercuspidalLabel, ell: u32) -> Vec<KTuple> {
    k_tuples(&phi.kappas(chi), ell)
}

/// `K^{ur}_{φ,χ} ∩ K^{(ℓ)}_{φ,χ}`.
pub fn k_ur_sets(phi: &DiscreteLParameter, chi: &SupercuspidalLabel, ell: u32) -> Vec<KTuple> {
    k_sets(phi, chi, ell).into_iter().filter(KTuple::is_ur).collect()
}

/// `κ(a) = (κ_1, ..., κ_1 - a_1 + 1, ..., κ_d, ..., κ_d - a_d + 1)`.
pub fn kappa_vector(kappas: &[HalfInt], a: &KTuple) -> OmegaVector {
    let runs: Vec<(HalfInt, HalfInt)> = kappas
        .iter()
        .zip(&a.a)
        .filter(|(_, &ai)| ai > 0)
        .map(|(&k, &ai)| (k, k - HalfInt::int(ai as i64 - 1)))
        .collect();
    OmegaVector::from_runs(&runs)
}

/// Replaces `χ ⊠ S_{2κ+1}` by `χ ⊠ S_{2κ-1}`, dropping it when `κ = ½`.
pub fn derivative_param(
    phi: &DiscreteLParameter,
    chi: &SupercuspidalLabel,
    kappa: HalfInt,
) -> Result<DiscreteLParameter, Error> {
    let without = phi.without(chi, kappa).ok_or_else(|| Error::DerivativeAbsent {
        label: chi.name.clone(),
        kappa,
    })?;
    if kappa == HalfInt::HALF {
        return Ok(without);
    }
    let lower = kappa - HalfInt::ONE;
    if without.contains(chi, lower) {
        return Err(Error::NonDiscrete { label: chi.name.clone(), kappa });
    }
    let mut summands = without.summands;
    summands.push(Summand::new(chi.clone(), lower));
    Ok(DiscreteLParameter::from_summands(summands))
}

/// `φ - ⊕_{a_i=1} χ⊠S_{2κ_i+1} + ⊕_{a_i=1} χ⊠S_{2κ_i-1}`, all at once. The result may
/// repeat a summand when consecutive κ's are lowered.
pub fn derive_simultaneously(
    phi: &DiscreteLParameter,
    chi: &SupercuspidalLabel,
    kappas: &[HalfInt],
    a: &KTuple,
) -> DiscreteLParameter {
    let mut summands = phi.summands.clone();
    let mut added = Vec::new();
    for (&k, &ai) in kappas.iter().zip(&a.a) {
        if ai == 0 {
            continue;
        }
        let pos = summands
            .iter()
            .position(|s| s.label == *chi && s.kappa == k)
            .expect("κ taken from φ");
        summands.remove(pos);
        if k != HalfInt::HALF {
            added.push(Summand::new(chi.clone(), k - HalfInt::ONE));
        }
    }
    summands.extend(added);
    DiscreteLParameter::from_summands(summands)
}

/// `δ_χ(κ(a)) × δ_{χ'}(κ'(a')) ⊠ π_{a,a'}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuUrTerm {
    pub gl_part: SegmentProduct,
    pub so_parameter: DiscreteLParameter,
    pub so_generic: bool,
    /// False when the simultaneous derivative repeats a summand.
    pub discrete: bool,
}

fn line(phi: &DiscreteLParameter, sign: UnitSign) -> (Option<SupercuspidalLabel>, Vec<HalfInt>) {
    match phi.unramified_label(sign) {
        Some(l) => {
            let ks = phi.kappas(&l);
            (Some(l), ks)
        }
        None => (None, Vec::new()),
    }
}

/// All `(a, a') ∈ K^{ur}_{φ,χ} × K^{ur}_{φ,χ'}`, `χ` first, by increasing `ℓ` then `ℓ'`.
pub fn mu_ur_terms(phi: &DiscreteLParameter) -> Vec<MuUrTerm> {
    let (chi, ks) = line(phi, UnitSign::Plus);
    let (chi2, ks2) = line(phi, UnitSign::Minus);
    let mut out = Vec::new();
    for ell in 0..=ks.len() as u32 {
        for a in k_tuples(&ks, ell).into_iter().filter(KTuple::is_ur) {
            let (phi_a, gl_a) = match &chi {
                Some(c) => (derive_simultaneously(phi, c, &ks, &a), kappa_vector(&ks, &a).delta(c)),
                None => (phi.clone(), SegmentProduct::one()),
            };
            for ell2 in 0..=ks2.len() as u32 {
                for a2 in k_tuples(&ks2, ell2).into_iter().filter(KTuple::is_ur) {
                    let (phi_aa, gl_b) = match &chi2 {
                        Some(c) => (
                            derive_simultaneously(&phi_a, c, &ks2, &a2),
                            kappa_vector(&ks2, &a2).delta(c),
                        ),
                        None => (phi_a.clone(), SegmentProduct::one()),
                    };
                    let mut factors = gl_a.factors.clone();
                    factors.extend(gl_b.factors);
                    out.push(MuUrTerm {
                        gl_part: SegmentProduct::new(factors),
                        discrete: phi_aa.is_discrete(),
                        so_parameter: phi_aa,
                        so_generic: true,
                    });
                }
            }
        }
    }
    out
}

/// `|μ*_ur(π)| = 2^{d+d'}`, after checking that the enumeration agrees with the count
/// obtained through the seed (`∏ |M*_ur(Δ_j)| · 2^{d_0+d_0'}`).
pub fn count_mu_ur(phi: &DiscreteLParameter) -> Result<u64, Error> {
    phi.validate()?;
    let lower = mu_ur_terms(phi).len() as u64;
    let dec = seed_decomposition(phi);
    let seed_lines = [UnitSign::Plus, UnitSign::Minus]
        .iter()
        .filter(|s| dec.seed.unramified_label(**s).is_some())
        .count() as u32;
    let peeled: i64 = dec
        .peeled
        .iter()
        .map(|s| m_star_ur_count(&SegmentProduct::new(vec![s.clone()])))
        .product();
    let upper = peeled as u64 * 2u64.pow(seed_lines);
    let d: usize = [UnitSign::Plus, UnitSign::Minus].iter().map(|s| line(phi, *s).1.len()).sum();
    let closed = 2u64.pow(d as u32);
    if lower != upper || lower != closed {
        return Err(Error::Inconsistency(format!(
            "|mu*_ur| enumeration {lower}, seed recursion {upper}, closed form {closed} for {phi}"
        )));
    }
    Ok(closed)
}

/// `φ, D_{κ}(φ), D_{κ-1}D_{κ}(φ), ..., ` down to the parameter with no `χ`-summand.
pub fn highest_derivative_chain(
    phi: &DiscreteLParameter,
    chi: &SupercuspidalLabel,
) -> Result<Vec<DiscreteLParameter>, Error> {
    let ks = phi.kappas(chi);
    match ks.len() {
        0 => return Ok(Vec::new()),
        1 => {}
        d => {
            return Err(Error::Domain(format!("{} carries {d} summands on {}, expected one", phi, chi.name)))
        }
    }
    let mut out = vec![phi.clone()];
    let mut kappa = ks[0];
    loop {
        let next = derivative_param(out.last().expect("nonempty"), chi, kappa)?;
        out.push(next);
        if kappa == HalfInt::HALF {
            break;
        }
        kappa = kappa - HalfInt::ONE;
    }
    Ok(out)
}
