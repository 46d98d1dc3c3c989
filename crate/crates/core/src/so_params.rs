//! Discrete L-parameters of `SO(2n+1)`: validation, the standard-module construction,
//! seeds, conductors, ε-signs and the conductor reduction chain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gl_ring::{segment_conductor, Segment, SelfDualKind, SupercuspidalLabel};
use crate::symbolics::{HalfInt, UnitSign};

/// `ρ ⊠ S_{2κ+1}`. Ramified summands may carry their ε-sign, which is not computed here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub label: SupercuspidalLabel,
    pub kappa: HalfInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<UnitSign>,
}

impl Summand {
    pub fn new(label: SupercuspidalLabel, kappa: HalfInt) -> Self {
        Summand { label, kappa, epsilon: None }
    }

    /// `dim_k · (2κ + 1)`.
    pub fn dim(&self) -> i64 {
        self.label.dim_k as i64 * (self.kappa.twice() + 1)
    }

    pub fn key(&self) -> (&SupercuspidalLabel, HalfInt) {
        (&self.label, self.kappa)
    }

    pub fn conductor(&self) -> i64 {
        if self.label.is_unramified() {
            self.kappa.twice()
        } else {
            (self.kappa.twice() + 1) * self.label.base_conductor as i64
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.label, self.kappa)
    }
}

/// `φ = ⊕ ρ ⊠ S_{2κ+1}` of dimension `2n`. Summands are kept sorted; an unvalidated
/// value may still hold repeats (see `so_jacquet`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiscreteLParameter {
    pub n: i64,
    pub summands: Vec<Summand>,
}

impl DiscreteLParameter {
    pub fn empty() -> Self {
        DiscreteLParameter { n: 0, summands: Vec::new() }
    }

    /// Sorts the summands and sets `n` from their total dimension.
    pub fn from_summands(mut summands: Vec<Summand>) -> Self {
        summands.sort();
        let total: i64 = summands.iter().map(Summand::dim).sum();
        DiscreteLParameter { n: total / 2, summands }
    }

    pub fn total_dim(&self) -> i64 {
        self.summands.iter().map(Summand::dim).sum()
    }

    pub fn contains(&self, label: &SupercuspidalLabel, kappa: HalfInt) -> bool {
        self.summands.iter().any(|s| s.label == *label && s.kappa == kappa)
    }

    /// κ's on each line, ascending.
    pub fn lines(&self) -> BTreeMap<SupercuspidalLabel, Vec<HalfInt>> {
        let mut out: BTreeMap<SupercuspidalLabel, Vec<HalfInt>> = BTreeMap::new();
        for s in &self.summands {
            out.entry(s.label.clone()).or_default().push(s.kappa);
        }
        for ks in out.values_mut() {
            ks.sort();
        }
        out
    }

    pub fn kappas(&self, label: &SupercuspidalLabel) -> Vec<HalfInt> {
        self.lines().remove(label).unwrap_or_default()
    }

    /// The unramified label with `χ(ϖ) = sign`, if it occurs.
    pub fn unramified_label(&self, sign: UnitSign) -> Option<SupercuspidalLabel> {
        self.summands
            .iter()
            .find(|s| s.label.is_unramified() && s.label.unram_sign == Some(sign))
            .map(|s| s.label.clone())
    }

    /// Removes one copy of `(label, κ)`.
    pub fn without(&self, label: &SupercuspidalLabel, kappa: HalfInt) -> Option<DiscreteLParameter> {
        let pos = self.summands.iter().position(|s| s.label == *label && s.kappa == kappa)?;
        let mut summands = self.summands.clone();
        summands.remove(pos);
        Some(DiscreteLParameter::from_summands(summands))
    }

    /// The part of `φ` away from the unramified lines.
    pub fn ramified_part(&self) -> DiscreteLParameter {
        DiscreteLParameter::from_summands(
            self.summands.iter().filter(|s| !s.label.is_unramified()).cloned().collect(),
        )
    }

    pub fn is_seed(&self) -> bool {
        self.lines().iter().filter(|(l, _)| l.is_unramified()).all(|(_, ks)| ks.len() <= 1)
    }

    /// `L(s, φ) = 1`, i.e. no summand on an unramified line.
    pub fn is_l_trivial(&self) -> bool {
        self.summands.iter().all(|s| !s.label.is_unramified())
    }

    /// Parity, self-duality and label checks, without discreteness or the value of `n`.
    pub fn validate_summands(&self) -> Result<(), Error> {
        let mut unram: BTreeMap<UnitSign, SupercuspidalLabel> = BTreeMap::new();
        for s in &self.summands {
            s.label.validate()?;
            if s.label.twist != HalfInt::ZERO {
                return Err(Error::InvalidLabel {
                    name: s.label.name.clone(),
                    reason: "labels in a parameter are unitary (twist 0)".into(),
                });
            }
            let ok = match s.label.selfdual_kind {
                SelfDualKind::Symplectic => s.kappa.is_integer(),
                SelfDualKind::Orthogonal => !s.kappa.is_integer(),
                SelfDualKind::None => {
                    return Err(Error::InvalidLabel {
                        name: s.label.name.clone(),
                        reason: "labels in a parameter are self-dual".into(),
                    })
                }
            };
            if !ok || s.kappa.is_negative() {
                return Err(Error::Parity {
                    label: s.label.name.clone(),
                    kind: s.label.selfdual_kind.to_string(),
                    kappa: s.kappa,
                });
            }
            if let Some(sign) = s.label.unram_sign {
                match unram.get(&sign) {
                    Some(prev) if *prev != s.label => {
                        return Err(Error::UnramifiedClash(sign.to_string()))
                    }
                    _ => {
                        unram.insert(sign, s.label.clone());
                    }
                }
            }
        }
        Ok(())
    }

    /// Full check; reports the first violation.
    pub fn validate(&self) -> Result<(), Error> {
        self.validate_summands()?;
        let mut seen = BTreeSet::new();
        for s in &self.summands {
            if !seen.insert(s.key()) {
                return Err(Error::DuplicateSummand { label: s.label.name.clone(), kappa: s.kappa });
            }
        }
        let total = self.total_dim();
        if total != 2 * self.n {
            return Err(Error::Dimension { expected: 2 * self.n, found: total });
        }
        Ok(())
    }

    pub fn is_discrete(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.summands.iter().all(|s| seen.insert(s.key()))
    }
}

impl fmt::Display for DiscreteLParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn validate(phi: &DiscreteLParameter) -> Result<(), Error> {
    phi.validate()
}

/// The six classes of lines.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub i00: Vec<SupercuspidalLabel>,
    pub i01: Vec<SupercuspidalLabel>,
    pub i02: Vec<SupercuspidalLabel>,
    pub i1: Vec<SupercuspidalLabel>,
    pub i2_even: Vec<SupercuspidalLabel>,
    pub i2_odd: Vec<SupercuspidalLabel>,
}

impl Partition {
    /// `I⁰ = I⁰⁰ ∪ I⁰¹ ∪ I⁰²`.
    pub fn i0(&self) -> Vec<SupercuspidalLabel> {
        let mut v = self.i00.clone();
        v.extend(self.i01.iter().cloned());
        v.extend(self.i02.iter().cloned());
        v.sort();
        v
    }
}

pub fn partition(phi: &DiscreteLParameter) -> Partition {
    let mut out = Partition::default();
    for (label, ks) in phi.lines() {
        let d = ks.len();
        match label.selfdual_kind {
            SelfDualKind::Symplectic if d % 2 == 1 => {
                if ks[0] != HalfInt::ZERO {
                    out.i02.push(label);
                } else if d == 1 {
                    out.i00.push(label);
                } else {
                    out.i01.push(label);
                }
            }
            SelfDualKind::Symplectic => out.i1.push(label),
            _ if d % 2 == 0 => out.i2_even.push(label),
            _ => out.i2_odd.push(label),
        }
    }
    out
}

/// Segments and supercuspidal data of the standard module `(× Δ_{ρ,j}) ⋊ σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub segments: Vec<Segment>,
    pub cuspidal_support: Vec<SupercuspidalLabel>,
    pub n0: i64,
}

impl ConstructionResult {
    /// The parameter `⊕_{ρ ∈ I⁰} ρ` of `σ`.
    pub fn sigma_parameter(&self) -> DiscreteLParameter {
        DiscreteLParameter::from_summands(
            self.cuspidal_support.iter().map(|l| Summand::new(l.clone(), HalfInt::ZERO)).collect(),
        )
    }
}

fn seg(label: &SupercuspidalLabel, x: HalfInt, y: HalfInt) -> Segment {
    Segment { label: label.clone(), x, y }
}

/// `Δ[κ_{b}, -κ_{a}]` for consecutive pairs `(a, b)` of `ks`.
fn paired_segments(label: &SupercuspidalLabel, ks: &[HalfInt]) -> Vec<Segment> {
    ks.chunks_exact(2).map(|p| seg(label, p[1], -p[0])).collect()
}

pub fn construct(phi: &DiscreteLParameter) -> ConstructionResult {
    let part = partition(phi);
    let lines = phi.lines();
    let mut segments = Vec::new();
    for label in &part.i01 {
        segments.extend(paired_segments(label, &lines[label][1..]));
    }
    for label in &part.i02 {
        let ks = &lines[label];
        segments.push(seg(label, ks[0], HalfInt::ONE));
        segments.extend(paired_segments(label, &ks[1..]));
    }
    for label in part.i1.iter().chain(&part.i2_even) {
        segments.extend(paired_segments(label, &lines[label]));
    }
    for label in &part.i2_odd {
        let ks = &lines[label];
        segments.push(seg(label, ks[0], HalfInt::HALF));
        segments.extend(paired_segments(label, &ks[1..]));
    }
    let cuspidal_support = part.i0();
    let n0 = cuspidal_support.iter().map(|l| l.dim_k as i64).sum::<i64>() / 2;
    ConstructionResult { segments, cuspidal_support, n0 }
}

/// `c(φ)`: `2κ` per unramified summand and `(2κ+1)·c(ρ)` per ramified one.
pub fn conductor(phi: &DiscreteLParameter) -> i64 {
    phi.summands.iter().map(Summand::conductor).sum()
}

/// `ε_φ = ∏ (-χ(ϖ))^{2κ}` over unramified summands, times the supplied ramified signs.
pub fn epsilon_sign(phi: &DiscreteLParameter) -> Result<UnitSign, Error> {
    let mut out = UnitSign::Plus;
    for s in &phi.summands {
        let factor = match s.label.unram_sign {
            Some(chi) => (-chi).pow(s.kappa.twice() as u64),
            None => s.epsilon.ok_or_else(|| Error::MissingEpsilon {
                label: s.label.name.clone(),
                kappa: s.kappa,
            })?,
        };
        out = out * factor;
    }
    Ok(out)
}

/// A seed together with the unramified segments peeled off to reach it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDecomposition {
    pub seed: DiscreteLParameter,
    pub peeled: Vec<Segment>,
}

pub fn seed_decomposition(phi: &DiscreteLParameter) -> SeedDecomposition {
    let mut kept: Vec<Summand> =
        phi.summands.iter().filter(|s| !s.label.is_unramified()).cloned().collect();
    let mut peeled = Vec::new();
    for (label, ks) in phi.lines().into_iter().filter(|(l, _)| l.is_unramified()) {
        let rest = if ks.len() % 2 == 1 {
            kept.push(Summand::new(label.clone(), ks[0]));
            &ks[1..]
        } else {
            &ks[..]
        };
        peeled.extend(paired_segments(&label, rest));
    }
    SeedDecomposition { seed: DiscreteLParameter::from_summands(kept), peeled }
}

pub fn seed_of(phi: &DiscreteLParameter) -> DiscreteLParameter {
    seed_decomposition(phi).seed
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    OffByOne,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::OffByOne => "off_by_one",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// Generic tempered down to its discrete part, conductor bookkeeping only.
    Tempered,
    /// Square-integrable, not a seed: peel to the seed.
    NonSeed,
    /// Seed with an unramified summand: strip `Δ_χ[κ, ½]`.
    SeedStrip,
    /// Seed with trivial L-factor: down to the supercuspidal support.
    LTrivialSeed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionNode {
    pub kind: NodeKind,
    pub parameter: DiscreteLParameter,
    pub segments_peeled: Vec<Segment>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gl_conductors: Vec<i64>,
    pub a_induced: i64,
    pub c_param: i64,
    pub relation: Relation,
}

struct Step {
    kind: NodeKind,
    parameter: DiscreteLParameter,
    peeled: Vec<Segment>,
}

/// The chain square-integrable → seed → stripped seeds → L-trivial seed, with `a_Π`
/// recomputed bottom-up from segment conductors and checked against `c(φ)`.
pub fn reduction_chain(phi: &DiscreteLParameter) -> Result<Vec<ReductionNode>, Error> {
    phi.validate()?;
    let mut steps = Vec::new();
    let mut cur = phi.clone();
    if !cur.is_seed() {
        let dec = seed_decomposition(&cur);
        steps.push(Step { kind: NodeKind::NonSeed, parameter: cur, peeled: dec.peeled });
        cur = dec.seed;
    }
    for sign in [UnitSign::Plus, UnitSign::Minus] {
        if let Some(label) = cur.unramified_label(sign) {
            let kappa = cur.kappas(&label)[0];
            let next = cur.without(&label, kappa).expect("summand present");
            steps.push(Step {
                kind: NodeKind::SeedStrip,
                parameter: cur,
                peeled: vec![seg(&label, kappa, HalfInt::HALF)],
            });
            cur = next;
        }
    }
    let cons = construct(&cur);
    let mut level = conductor(&cons.sigma_parameter());
    steps.push(Step { kind: NodeKind::LTrivialSeed, parameter: cur, peeled: cons.segments });

    let mut nodes = Vec::with_capacity(steps.len());
    for step in steps.into_iter().rev() {
        let a_induced = level + 2 * step.peeled.iter().map(segment_conductor).sum::<i64>();
        let c_param = conductor(&step.parameter);
        let relation = match step.kind {
            NodeKind::SeedStrip => Relation::OffByOne,
            _ => Relation::Equal,
        };
        let expected = match relation {
            Relation::Equal => c_param,
            Relation::OffByOne => c_param - 1,
        };
        if a_induced != expected {
            return Err(Error::Inconsistency(format!(
                "{:?} node {}: a = {a_induced} but c = {c_param} under relation {relation}",
                step.kind, step.parameter
            )));
        }
        level = match relation {
            Relation::Equal => a_induced,
            Relation::OffByOne => a_induced + 1,
        };
        nodes.push(ReductionNode {
            kind: step.kind,
            parameter: step.parameter,
            segments_peeled: step.peeled,
            gl_conductors: Vec::new(),
            a_induced,
            c_param,
            relation,
        });
    }
    nodes.reverse();
    Ok(nodes)
}

/// `reduction_chain` preceded by a tempered node `τ_1 × ··· × τ_ℓ ⋊ π_0` whose `GL`
/// factors contribute the conductors `gl_conductors`.
pub fn reduction_chain_tempered(
    phi0: &DiscreteLParameter,
    gl_conductors: &[i64],
) -> Result<Vec<ReductionNode>, Error> {
    if let Some(c) = gl_conductors.iter().find(|c| **c < 0) {
        return Err(Error::Domain(format!("negative conductor {c}")));
    }
    let mut chain = reduction_chain(phi0)?;
    let top = &chain[0];
    let level0 = match top.relation {
        Relation::Equal => top.a_induced,
        Relation::OffByOne => top.a_induced + 1,
    };
    let extra = 2 * gl_conductors.iter().sum::<i64>();
    let node = ReductionNode {
        kind: NodeKind::Tempered,
        parameter: phi0.clone(),
        segments_peeled: Vec::new(),
        gl_conductors: gl_conductors.to_vec(),
        a_induced: level0 + extra,
        c_param: conductor(phi0) + extra,
        relation: Relation::Equal,
    };
    if node.a_induced != node.c_param {
        return Err(Error::Inconsistency("tempered prefix does not balance".into()));
    }
    chain.insert(0, node);
    Ok(chain)
}
