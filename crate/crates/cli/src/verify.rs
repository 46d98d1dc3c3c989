//! The `verify-all` property sweep.

use newform_core::coset_geometry::{
    coset_count, enumerate_coset_reps, enumerate_hecke_reps, hecke_count, kernel_check, relation_suite,
    unit_ratio, verify_coset_distinctness, verify_hecke_distinctness, whittaker_value, VerificationReport,
};
use newform_core::gl_ring::{
    comult_m_star, has_unramified_constituent, hecke_eigenvalues, m_star_product, m_star_ur_count, Segment,
    SegmentProduct, SelfDualKind, SupercuspidalLabel,
};
use newform_core::sample::{random_parameter, SampleBounds};
use newform_core::so_jacquet::{count_mu_ur, derivative_param, highest_derivative_chain, k_tuples, mu_ur_terms};
use newform_core::so_params::{
    conductor, construct, epsilon_sign, reduction_chain, seed_decomposition, seed_of, DiscreteLParameter, NodeKind,
    Relation, Summand,
};
use newform_core::{Error, HalfInt, QLaurent, UnitSign};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub p: u64,
    pub max_n: usize,
    pub max_d: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub checked: u64,
    pub failures: Vec<String>,
}

fn suite(name: &'static str, r: Result<VerificationReport, Error>) -> SuiteResult {
    match r {
        Ok(rep) => SuiteResult { suite: name, checked: rep.checked, failures: rep.failures },
        Err(e) => SuiteResult { suite: name, checked: 1, failures: vec![format!("aborted: {e}")] },
    }
}

fn random_laurent(rng: &mut ChaCha8Rng) -> QLaurent {
    let len = rng.gen_range(0..4);
    QLaurent::from_terms((0..len).map(|_| (HalfInt::from_twice(rng.gen_range(-6..=6)), rng.gen_range(-4..=4))))
}

fn ring_axioms(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = VerificationReport::default();
    for _ in 0..cfg.samples {
        let (a, b, c) = (random_laurent(&mut rng), random_laurent(&mut rng), random_laurent(&mut rng));
        rep.check((&a * &b) * c.clone() == &a * &(&b * &c), || format!("associativity: {a}, {b}, {c}"));
        rep.check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity: {a}, {b}, {c}"));
        rep.check(&a * &b == &b * &a, || format!("commutativity: {a}, {b}"));
    }
    Ok(rep)
}

fn m_star_table() -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let labels = [
        (SupercuspidalLabel::chi(), false),
        (SupercuspidalLabel::chi_prime(), false),
        (SupercuspidalLabel::ramified("rho_s", 2, SelfDualKind::Symplectic, 1), true),
        (SupercuspidalLabel::ramified("rho_o", 1, SelfDualKind::Orthogonal, 2), true),
    ];
    for (label, integral) in labels {
        for len in 0..=8i64 {
            for y2 in [-3i64, -1, 1, 3] {
                let y = if integral { HalfInt::int(y2) } else { HalfInt::from_twice(y2) };
                let seg = Segment { label: label.clone(), x: y + HalfInt::int(len), y };
                let expected = match (label.is_unramified(), len) {
                    (false, _) => 1,
                    (true, 0) => 3,
                    (true, _) => 4,
                };
                let got = m_star_ur_count(&SegmentProduct::new(vec![seg.clone()]));
                rep.check(got == expected, || format!("M*_ur count of {seg}: {got}, expected {expected}"));
                let m = comult_m_star(&seg);
                let terms = (len + 2) * (len + 3) / 2;
                rep.check(m.total_count() == terms, || format!("M*({seg}) has {} terms", m.total_count()));
                let whole = SegmentProduct::new(vec![seg.clone()]);
                let counit = m_star_product(&whole).multiplicity(&SegmentProduct::one(), &whole);
                rep.check(counit == 1, || format!("counit multiplicity of {seg} is {counit}"));
            }
        }
    }
    Ok(rep)
}

fn hecke_suite() -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for r in 2..=10usize {
        for chi in [UnitSign::Plus, UnitSign::Minus] {
            let lam = hecke_eigenvalues(&[(chi, HalfInt::from_twice(r as i64 - 1))], r)?;
            let mut expect = vec![QLaurent::zero(); r];
            expect[0] = QLaurent::one();
            expect[1] = QLaurent::constant(chi.value());
            rep.check(lam == expect, || format!("r = {r}, chi = {chi}: got {lam:?}"));
        }
    }
    Ok(rep)
}

/// Multiset of `(label, exponent)` pairs: `κ, κ-1, ..., -κ` per summand.
fn exponent_content(phi: &DiscreteLParameter) -> Vec<(String, HalfInt)> {
    let mut out = Vec::new();
    for s in &phi.summands {
        let mut e = s.kappa;
        while e >= -s.kappa {
            out.push((s.label.name.clone(), e));
            e = e - HalfInt::ONE;
        }
    }
    out.sort();
    out
}

fn check_parameter(phi: &DiscreteLParameter, rep: &mut VerificationReport) -> Result<(), Error> {
    phi.validate()?;
    let seed = seed_of(phi);
    rep.check(seed.is_seed() && seed_of(&seed) == seed, || format!("seed of {phi} is not an idempotent seed"));
    rep.check(seed.ramified_part() == phi.ramified_part(), || format!("seed of {phi} changed the ramified part"));
    let dec = seed_decomposition(phi);
    let peeled: i64 = dec.peeled.iter().map(newform_core::gl_ring::segment_conductor).sum();
    rep.check(conductor(phi) == conductor(&dec.seed) + 2 * peeled, || format!("conductor identity fails for {phi}"));

    let chain = reduction_chain(phi)?;
    for node in &chain {
        let want = match node.kind {
            NodeKind::SeedStrip => Relation::OffByOne,
            _ => Relation::Equal,
        };
        let delta = match want {
            Relation::Equal => 0,
            Relation::OffByOne => 1,
        };
        rep.check(node.relation == want && node.a_induced == node.c_param - delta, || {
            format!("chain node {:?} at {} records {} with a = {}, c = {}", node.kind, node.parameter, node.relation, node.a_induced, node.c_param)
        });
    }

    let cons = construct(phi);
    rep.check(cons.segments.iter().all(|s| (s.x + s.y).twice() > 0), || format!("construct({phi}) has a segment with non-positive exponent"));
    let mut content: Vec<(String, HalfInt)> = Vec::new();
    for s in &cons.segments {
        for e in s.exponents() {
            content.push((s.label.name.clone(), e));
            content.push((s.label.name.clone(), -e));
        }
    }
    for l in &cons.cuspidal_support {
        content.push((l.name.clone(), HalfInt::ZERO));
    }
    content.sort();
    rep.check(content == exponent_content(phi), || format!("construct({phi}) does not reassemble"));

    let count = count_mu_ur(phi)?;
    let terms = mu_ur_terms(phi);
    rep.check(terms.len() as u64 == count, || format!("mu*_ur of {phi}: {} terms, count {count}", terms.len()));
    for t in &terms {
        let ok = has_unramified_constituent(&t.gl_part) && 2 * t.gl_part.dim() + t.so_parameter.total_dim() == phi.total_dim();
        rep.check(ok, || format!("mu*_ur term {} of {phi} fails bookkeeping", t.gl_part));
    }
    epsilon_sign(phi)?;

    for label in [SupercuspidalLabel::chi(), SupercuspidalLabel::chi_prime()] {
        if phi.kappas(&label).len() != 1 {
            continue;
        }
        let chain = highest_derivative_chain(phi, &label)?;
        let last = chain.last().expect("nonempty chain");
        let k = phi.kappas(&label)[0];
        rep.check(chain.len() as i64 == k.twice() / 2 + 2 && last.kappas(&label).is_empty(), || {
            format!("derivative chain of {phi} along {label} has length {}", chain.len())
        });
        let vanish = (0..8).all(|t| derivative_param(last, &label, HalfInt::from_twice(2 * t + 1)).is_err());
        rep.check(vanish, || format!("derivative chain of {phi} does not end in a vanishing point"));
    }
    Ok(())
}

fn parameters(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bounds = SampleBounds { max_d: cfg.max_d, ..SampleBounds::default() };
    let mut rep = VerificationReport::default();
    for _ in 0..cfg.samples {
        let phi = random_parameter(&mut rng, &bounds);
        if let Err(e) = check_parameter(&phi, &mut rep) {
            rep.check(false, || format!("{phi}: {e}"));
        }
    }
    Ok(rep)
}

fn k_ur_binomial(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let max = cfg.max_d.max(8);
    for d in 0..=max {
        let ks: Vec<HalfInt> = (0..d as i64).map(|i| HalfInt::from_twice(4 * i + 1)).collect();
        let mut binom = 1u64;
        for ell in 0..=d as u32 {
            let got = k_tuples(&ks, ell).into_iter().filter(|a| a.is_ur()).count() as u64;
            rep.check(got == binom, || format!("d = {d}, l = {ell}: {got} vs {binom}"));
            binom = binom * (d as u64 - ell as u64) / (ell as u64 + 1);
        }
    }
    Ok(rep)
}

fn epsilon_telescoping() -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for twice in (1..=15).step_by(2) {
        let kappa = HalfInt::from_twice(twice);
        for chi in [SupercuspidalLabel::chi(), SupercuspidalLabel::chi_prime()] {
            let sign = chi.unram_sign.expect("unramified");
            let phi = DiscreteLParameter::from_summands(vec![Summand::new(chi.clone(), kappa)]);
            let eps = epsilon_sign(&phi)?;
            let c = conductor(&phi);
            for s2 in -2..=4 {
                let s = HalfInt::from_twice(s2);
                let mut prod = QLaurent::one();
                for i in 0..twice {
                    prod = &prod * &QLaurent::monomial(-sign.value(), -(s - kappa + HalfInt::int(i)));
                }
                let closed = QLaurent::monomial(eps.value(), -((s - HalfInt::HALF) * c));
                rep.check(prod == closed, || format!("({chi}, {kappa}) at s = {s}: {prod} vs {closed}"));
            }
        }
    }
    Ok(rep)
}

fn cosets(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for n in 1..=cfg.max_n.min(3) {
        for m in 0..=2 {
            let reps = enumerate_coset_reps(n, m, cfg.p);
            let expect = coset_count(n, cfg.p);
            rep.check(reps.len() as u64 == expect, || format!("n = {n}: {} representatives, expected {expect}", reps.len()));
            rep.merge(verify_coset_distinctness(n, &reps, m, cfg.p)?);
        }
    }
    Ok(rep)
}

fn hecke_cosets(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for r in 1..=4usize {
        for i in 0..r {
            let reps = enumerate_hecke_reps(r, i, cfg.p)?;
            let expect = hecke_count(r, i, cfg.p);
            rep.check(reps.len() as u64 == expect, || format!("r = {r}, i = {i}: {} representatives", reps.len()));
            rep.merge(verify_hecke_distinctness(r, &reps, cfg.p));
        }
    }
    Ok(rep)
}

fn level_raising(cfg: &SweepConfig) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for n in 1..=cfg.max_n {
        for r in 1..=n {
            let vol = ((n - r) * (n - r).saturating_sub(1) / 2) as i64;
            let expect = &QLaurent::monomial(1, HalfInt::int((n * r) as i64 + vol))
                - &QLaurent::monomial(1, HalfInt::int(((n - 1) * r) as i64 + vol));
            for chi in [UnitSign::Plus, UnitSign::Minus] {
                let kernel = kernel_check(n, r, chi);
                rep.check(kernel.is_ok(), || format!("kernel (n, r, chi) = ({n}, {r}, {chi}): {:?}", kernel.err()));
                let w = whittaker_value(n, r, chi)?;
                rep.check(unit_ratio(&w, &expect).is_some(), || format!("Whittaker ({n}, {r}, {chi}) = {w}"));
                for q in [2, 3] {
                    rep.check(!w.eval(q).map(|v| v.is_zero()).unwrap_or(true), || format!("Whittaker ({n}, {r}) vanishes at q = {q}"));
                }
            }
        }
    }
    Ok(rep)
}

pub fn run_all(cfg: &SweepConfig) -> Vec<SuiteResult> {
    vec![
        suite("qlaurent_ring_axioms", ring_axioms(cfg)),
        suite("m_star_table", m_star_table()),
        suite("hecke_eigenvalues", hecke_suite()),
        suite("epsilon_telescoping", epsilon_telescoping()),
        suite("k_ur_binomial", k_ur_binomial(cfg)),
        suite("parameters", parameters(cfg)),
        suite("coset_decomposition", cosets(cfg)),
        suite("matrix_relations", relation_suite(cfg.max_n.min(4), 2, cfg.p)),
        suite("hecke_cosets", hecke_cosets(cfg)),
        suite("level_raising", level_raising(cfg)),
    ]
}
