//! Machine checks of the explicit non-injective surjections of Dehn
//! quandles of `BS(m, n)`, and of the shift map on `Conj(Z)`.
//!
//! A map `phi` is given on the atoms of a generating set of the Dehn quandle
//! and extended to terms by expansion. Each report carries surjectivity
//! evidence (generators recovered from the images by a bounded closure), a
//! non-injectivity pair, and sampled homomorphism identities.

use std::collections::HashMap;
use std::fmt;

use crate::bs::{abelian_image, equal, pinch_reduce, AbelianImage, BsPresentation};
use crate::classify::prime_support;
use crate::closure::{bounded_closure_bs, ClosureLimits};
use crate::error::{Error, Result};
use crate::term::{expand_term, parse_term, AtomAssignment, Op, QuandleTerm};
use crate::word::GroupWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    Case1,
    Case2,
    ConjZ,
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessCase::Case1 => "Case1",
            WitnessCase::Case2 => "Case2",
            WitnessCase::ConjZ => "ConjZ",
        })
    }
}

/// Generators recovered from the images of `phi` within `depth` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityEvidence {
    pub depth: usize,
    /// Pinch-reduced images of the generators, in generator order.
    pub images: Vec<GroupWord>,
    /// For each generator, how it is reached from the images, if it is.
    pub recovered: Vec<(String, Option<String>)>,
}

impl SurjectivityEvidence {
    pub fn passed(&self) -> bool {
        self.recovered.iter().all(|(_, how)| how.is_some())
    }
}

/// Two terms whose `phi`-images agree although the terms themselves denote
/// different elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonInjectivity {
    pub lhs: QuandleTerm,
    pub rhs: QuandleTerm,
    pub lhs_image: GroupWord,
    pub rhs_image: GroupWord,
    pub images_equal: bool,
    pub lhs_preimage: GroupWord,
    pub rhs_preimage: GroupWord,
    pub preimages_equal: bool,
}

impl NonInjectivity {
    pub fn passed(&self) -> bool {
        self.images_equal && !self.preimages_equal
    }
}

/// Identities `phi(t1 *^e t2) = phi(t1) *^e phi(t2)` over a term sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyChecks {
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

/// Pairs of sample terms that denote the same element, and whether `phi`
/// sends them to the same element. Informational: a disagreement means the
/// atom-wise definition does not descend to the Dehn quandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinednessProbe {
    pub terms: usize,
    pub coincident_pairs: usize,
    pub agreeing_pairs: usize,
    pub counterexample: Option<(QuandleTerm, QuandleTerm)>,
}

/// Verdict on a claimed inequality `lhs != rhs` in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityVerdict {
    pub label: &'static str,
    pub lhs: GroupWord,
    pub rhs: GroupWord,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub case: WitnessCase,
    pub presentation: BsPresentation,
    pub generators: Vec<String>,
    /// Atom images, as terms in the same generators.
    pub map: Vec<(String, QuandleTerm)>,
    pub surjectivity: SurjectivityEvidence,
    pub noninjectivity: NonInjectivity,
    pub consistency: ConsistencyChecks,
    pub inequalities: Vec<InequalityVerdict>,
    pub probe: WellDefinednessProbe,
}

impl WitnessReport {
    /// Surjectivity evidence, the non-injectivity pair and every sampled
    /// identity all check out.
    pub fn passed(&self) -> bool {
        self.surjectivity.passed()
            && self.noninjectivity.passed()
            && self.consistency.passed == self.consistency.checked
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for WitnessReport {
    /// Stable `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case={}", self.case)?;
        writeln!(f, "presentation={}", self.presentation)?;
        writeln!(f, "generators={}", self.generators.join(", "))?;
        let map: Vec<String> = self
            .map
            .iter()
            .map(|(g, t)| format!("{g} -> {t}"))
            .collect();
        writeln!(f, "map={}", map.join("; "))?;

        let s = &self.surjectivity;
        writeln!(f, "surjectivity.depth={}", s.depth)?;
        writeln!(f, "surjectivity.images={}", join(&s.images))?;
        for (g, how) in &s.recovered {
            match how {
                Some(text) => writeln!(f, "surjectivity.recovered.{g}={text}")?,
                None => writeln!(f, "surjectivity.recovered.{g}=none")?,
            }
        }
        writeln!(f, "surjectivity.passed={}", s.passed())?;

        let ni = &self.noninjectivity;
        writeln!(f, "noninjectivity.lhs={}", ni.lhs)?;
        writeln!(f, "noninjectivity.rhs={}", ni.rhs)?;
        writeln!(f, "noninjectivity.lhs_image={}", ni.lhs_image)?;
        writeln!(f, "noninjectivity.rhs_image={}", ni.rhs_image)?;
        writeln!(f, "noninjectivity.images_equal={}", ni.images_equal)?;
        writeln!(f, "noninjectivity.lhs_preimage={}", ni.lhs_preimage)?;
        writeln!(f, "noninjectivity.rhs_preimage={}", ni.rhs_preimage)?;
        writeln!(f, "noninjectivity.preimages_equal={}", ni.preimages_equal)?;
        writeln!(f, "noninjectivity.passed={}", ni.passed())?;

        let c = &self.consistency;
        writeln!(f, "consistency.checked={}", c.checked)?;
        writeln!(f, "consistency.passed={}", c.passed)?;
        if let Some(fail) = &c.first_failure {
            writeln!(f, "consistency.first_failure={fail}")?;
        }

        for v in &self.inequalities {
            writeln!(f, "inequality.{}={} != {}", v.label, v.lhs, v.rhs)?;
            writeln!(f, "inequality.{}.holds={}", v.label, v.holds)?;
        }

        let p = &self.probe;
        writeln!(f, "well_definedness.terms={}", p.terms)?;
        writeln!(
            f,
            "well_definedness.coincident_pairs={}",
            p.coincident_pairs
        )?;
        writeln!(f, "well_definedness.agreeing_pairs={}", p.agreeing_pairs)?;
        if let Some((l, r)) = &p.counterexample {
            writeln!(f, "well_definedness.counterexample={l} | {r}")?;
        }
        writeln!(f, "status={}", if self.passed() { "pass" } else { "fail" })
    }
}

/// The generating triple `{a, b, a^k}` as atom names.
fn generator_names(k: i64) -> Vec<String> {
    vec!["a".into(), "b".into(), format!("a^{k}")]
}

fn term(text: &str) -> QuandleTerm {
    parse_term(text).expect("built-in witness terms parse")
}

/// All left-associated terms with at most `depth` operations.
fn terms_up_to(generators: &[String], depth: usize) -> Vec<QuandleTerm> {
    let mut out: Vec<QuandleTerm> = generators
        .iter()
        .map(|g| QuandleTerm::atom(g.clone()))
        .collect();
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for g in generators {
                for op in [Op::Star, Op::StarInv] {
                    next.push(t.clone().then(g.clone(), op));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Size of the term sample behind the consistency checks and the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessConfig {
    /// Sample terms have at most this many operations; operands at most one.
    pub sample_depth: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { sample_depth: 2 }
    }
}

struct Setup {
    case: WitnessCase,
    p: BsPresentation,
    generators: Vec<String>,
    map: Vec<(String, QuandleTerm)>,
    depth: usize,
    pair: (QuandleTerm, QuandleTerm),
    inequalities: Vec<(&'static str, GroupWord, GroupWord)>,
}

fn build(setup: Setup, config: WitnessConfig) -> Result<WitnessReport> {
    let Setup {
        case,
        p,
        generators,
        map,
        depth,
        pair,
        inequalities,
    } = setup;
    let literal = AtomAssignment::literal();
    // phi on atoms, as words
    let mut phi = AtomAssignment::new();
    for (g, t) in &map {
        phi.insert(g.clone(), pinch_reduce(&expand_term(t, &literal)?, &p)?);
    }
    let images: Vec<GroupWord> = generators
        .iter()
        .map(|g| phi.get(g).expect("every generator is mapped"))
        .collect();

    let closure = bounded_closure_bs(&p, &images, depth, ClosureLimits::default())?;
    let image_names: Vec<String> = images.iter().map(GroupWord::to_string).collect();
    let mut recovered = Vec::new();
    for g in &generators {
        let w = literal.get(g).expect("generator names are words");
        let how = closure
            .find(&w)?
            .map(|i| closure.derivation_text(i, &image_names));
        recovered.push((g.clone(), how));
    }
    let surjectivity = SurjectivityEvidence {
        depth,
        images,
        recovered,
    };

    let (lhs, rhs) = pair;
    let lhs_image = pinch_reduce(&expand_term(&lhs, &phi)?, &p)?;
    let rhs_image = pinch_reduce(&expand_term(&rhs, &phi)?, &p)?;
    let lhs_preimage = expand_term(&lhs, &literal)?;
    let rhs_preimage = expand_term(&rhs, &literal)?;
    let noninjectivity = NonInjectivity {
        images_equal: equal(&lhs_image, &rhs_image, &p)?,
        preimages_equal: equal(&lhs_preimage, &rhs_preimage, &p)?,
        lhs,
        rhs,
        lhs_image,
        rhs_image,
        lhs_preimage,
        rhs_preimage,
    };

    let sample = terms_up_to(&generators, config.sample_depth);
    let operands = terms_up_to(&generators, config.sample_depth.min(1));
    let consistency = consistency_checks(&p, &sample, &operands, &phi)?;
    let probe = probe(&p, &sample, &literal, &phi)?;

    let inequalities = inequalities
        .into_iter()
        .map(|(label, lhs, rhs)| {
            Ok(InequalityVerdict {
                label,
                holds: !equal(&lhs, &rhs, &p)?,
                lhs,
                rhs,
            })
        })
        .collect::<Result<_>>()?;

    Ok(WitnessReport {
        case,
        presentation: p,
        generators,
        map,
        surjectivity,
        noninjectivity,
        consistency,
        inequalities,
        probe,
    })
}

/// `phi(t1 *^e t2)` against `phi(t1) *^e phi(t2)` for `t1` in the sample,
/// `t2` among the operands, both operations.
fn consistency_checks(
    p: &BsPresentation,
    sample: &[QuandleTerm],
    operands: &[QuandleTerm],
    phi: &AtomAssignment,
) -> Result<ConsistencyChecks> {
    let phi_of = |t: &QuandleTerm| -> Result<GroupWord> { pinch_reduce(&expand_term(t, phi)?, p) };
    let sample_images: Vec<GroupWord> = sample.iter().map(phi_of).collect::<Result<_>>()?;
    let operand_images: Vec<GroupWord> = operands.iter().map(phi_of).collect::<Result<_>>()?;
    let mut checks = ConsistencyChecks {
        checked: 0,
        passed: 0,
        first_failure: None,
    };
    for (t1, x) in sample.iter().zip(&sample_images) {
        for (t2, y) in operands.iter().zip(&operand_images) {
            for op in [Op::Star, Op::StarInv] {
                let lhs = phi_of(&t1.clone().apply(op, t2))?;
                let rhs = match op {
                    Op::Star => x.conjugate_by(y)?,
                    Op::StarInv => x.conjugate_by_inverse(y)?,
                };
                checks.checked += 1;
                if equal(&lhs, &rhs, p)? {
                    checks.passed += 1;
                } else if checks.first_failure.is_none() {
                    checks.first_failure = Some(format!("({t1}) {op} ({t2})"));
                }
            }
        }
    }
    Ok(checks)
}

fn probe(
    p: &BsPresentation,
    sample: &[QuandleTerm],
    literal: &AtomAssignment,
    phi: &AtomAssignment,
) -> Result<WellDefinednessProbe> {
    let mut pre = Vec::with_capacity(sample.len());
    let mut buckets: HashMap<AbelianImage, Vec<usize>> = HashMap::new();
    for (i, t) in sample.iter().enumerate() {
        let w = pinch_reduce(&expand_term(t, literal)?, p)?;
        buckets.entry(abelian_image(&w, p)).or_default().push(i);
        pre.push(w);
    }
    let mut out = WellDefinednessProbe {
        terms: sample.len(),
        coincident_pairs: 0,
        agreeing_pairs: 0,
        counterexample: None,
    };
    let mut keys: Vec<&AbelianImage> = buckets.keys().collect();
    keys.sort_by_key(|k| buckets[*k][0]);
    for key in keys {
        let bucket = &buckets[key];
        for (x, &i) in bucket.iter().enumerate() {
            for &j in &bucket[..x] {
                if !equal(&pre[i], &pre[j], p)? {
                    continue;
                }
                out.coincident_pairs += 1;
                let (ti, tj) = (&sample[i], &sample[j]);
                if equal(&expand_term(ti, phi)?, &expand_term(tj, phi)?, p)? {
                    out.agreeing_pairs += 1;
                } else if out.counterexample.is_none() {
                    out.counterexample = Some((ti.clone(), tj.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Case 1 (`|m|, |n| != 1` and different prime supports):
/// `a -> a^m`, `b -> b`, `a^m -> a`, with `a * b * a *^-1 b` and `a` having
/// the same image.
pub fn verify_case1_witness(p: &BsPresentation) -> Result<WitnessReport> {
    verify_case1_witness_with(p, WitnessConfig::default())
}

pub fn verify_case1_witness_with(
    p: &BsPresentation,
    config: WitnessConfig,
) -> Result<WitnessReport> {
    let (m, n) = (p.m(), p.n());
    if m.unsigned_abs() == 1 || n.unsigned_abs() == 1 {
        return Err(Error::Precondition(format!(
            "{p}: Case 1 needs |m| != 1 and |n| != 1"
        )));
    }
    if prime_support(m)? == prime_support(n)? {
        return Err(Error::Precondition(format!(
            "{p}: Case 1 needs m and n to have different prime divisors"
        )));
    }
    let generators = generator_names(m);
    let am = generators[2].clone();
    let map = vec![
        ("a".to_string(), QuandleTerm::atom(am.clone())),
        ("b".to_string(), QuandleTerm::atom("b")),
        (am, QuandleTerm::atom("a")),
    ];
    build(
        Setup {
            case: WitnessCase::Case1,
            p: *p,
            generators,
            map,
            depth: 0,
            pair: (term("a * b * a *^-1 b"), term("a")),
            inequalities: Vec::new(),
        },
        config,
    )
}

/// Case 2 (one parameter is a multiple `l` times the other, `|l| >= 2`).
///
/// For `n = l m`: `a -> a`, `b -> b`, `a^m -> a^m * b`, with
/// `a^m *^-1 b * a` and `a^m *^-1 b` having the same image; `a^m` comes back
/// as `a^n *^-1 b`. For `m = l n` the mirrored map on `{a, b, a^n}` is used:
/// `a^n -> a^n *^-1 b`, with `a^n * b * a` and `a^n * b` colliding.
pub fn verify_case2_witness(p: &BsPresentation) -> Result<WitnessReport> {
    verify_case2_witness_with(p, WitnessConfig::default())
}

pub fn verify_case2_witness_with(
    p: &BsPresentation,
    config: WitnessConfig,
) -> Result<WitnessReport> {
    let (m, n) = (p.m(), p.n());
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    if am == 1 || an == 1 {
        return Err(Error::Precondition(format!(
            "{p}: Case 2 needs |m| != 1 and |n| != 1"
        )));
    }
    let forward = an % am == 0 && an != am;
    let mirrored = am % an == 0 && am != an;
    if !forward && !mirrored {
        return Err(Error::Precondition(format!(
            "{p}: Case 2 needs n = l m or m = l n with |l| >= 2"
        )));
    }
    let (k, image, pair, inequalities) = if forward {
        let g = format!("a^{m}");
        let printed = (
            "printed",
            crate::word::parse_word(&format!("a^-1 b a^{m} b^-1 a"))?,
            crate::word::parse_word(&format!("b a^{} b^-1", -(m as i128)))?,
        );
        let expanded = (
            "expanded",
            printed.1.clone(),
            crate::word::parse_word(&format!("b a^{m} b^-1"))?,
        );
        (
            m,
            QuandleTerm::atom(g.clone()).star("b"),
            (
                QuandleTerm::atom(g.clone()).star_inv("b").star("a"),
                QuandleTerm::atom(g).star_inv("b"),
            ),
            vec![printed, expanded],
        )
    } else {
        let g = format!("a^{n}");
        (
            n,
            QuandleTerm::atom(g.clone()).star_inv("b"),
            (
                QuandleTerm::atom(g.clone()).star("b").star("a"),
                QuandleTerm::atom(g).star("b"),
            ),
            Vec::new(),
        )
    };
    let generators = generator_names(k);
    let map = vec![
        ("a".to_string(), QuandleTerm::atom("a")),
        ("b".to_string(), QuandleTerm::atom("b")),
        (generators[2].clone(), image),
    ];
    build(
        Setup {
            case: WitnessCase::Case2,
            p: *p,
            generators,
            map,
            depth: 1,
            pair,
            inequalities,
        },
        config,
    )
}

/// The shift toward zero on `Conj(Z)`, restricted to exponents `[-N, N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjZReport {
    pub radius: i64,
    pub homomorphism_checked: usize,
    pub homomorphism_passed: usize,
    /// Exponents `(0, 1)` and their common image.
    pub collision: (i64, i64, i64),
    pub image_min: i64,
    pub image_max: i64,
    /// Exponents in `[-N+1, N-1]` without a preimage in the window.
    pub missing_preimages: Vec<i64>,
}

impl ConjZReport {
    pub fn passed(&self) -> bool {
        self.homomorphism_checked == self.homomorphism_passed
            && shift_toward_zero(self.collision.0) == shift_toward_zero(self.collision.1)
            && self.missing_preimages.is_empty()
    }
}

impl fmt::Display for ConjZReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case={}", WitnessCase::ConjZ)?;
        writeln!(f, "window=[{},{}]", -self.radius, self.radius)?;
        writeln!(f, "map=a^k -> a^(k-sign(k))")?;
        writeln!(f, "homomorphism.checked={}", self.homomorphism_checked)?;
        writeln!(f, "homomorphism.passed={}", self.homomorphism_passed)?;
        let (x, y, img) = self.collision;
        writeln!(f, "noninjectivity.exponents=({x},{y})")?;
        writeln!(f, "noninjectivity.image={img}")?;
        writeln!(
            f,
            "surjectivity.image=[{},{}]",
            self.image_min, self.image_max
        )?;
        writeln!(f, "surjectivity.missing={}", join(&self.missing_preimages))?;
        writeln!(f, "status={}", if self.passed() { "pass" } else { "fail" })
    }
}

fn shift_toward_zero(k: i64) -> i64 {
    k - k.signum()
}

/// Runs the `Conj(Z)` demonstration on the window `[-N, N]`, `N >= 2`.
pub fn conj_z_demo(radius: i64) -> Result<ConjZReport> {
    if radius < 2 {
        return Err(Error::Precondition(format!(
            "window radius must be at least 2, got {radius}"
        )));
    }
    if radius > 1 << 20 {
        return Err(Error::ResourceLimit(format!(
            "window radius {radius} is too large"
        )));
    }
    // x * y = y^-1 x y computed additively in Z
    let star = |x: i64, y: i64| -y + x + y;
    let window = -radius..=radius;
    let mut checked = 0;
    let mut passed = 0;
    for x in window.clone() {
        for y in window.clone() {
            checked += 1;
            if shift_toward_zero(star(x, y)) == star(shift_toward_zero(x), shift_toward_zero(y)) {
                passed += 1;
            }
        }
    }
    let images: Vec<i64> = window.clone().map(shift_toward_zero).collect();
    let missing = (-radius + 1..=radius - 1)
        .filter(|k| !images.contains(k))
        .collect();
    Ok(ConjZReport {
        radius,
        homomorphism_checked: checked,
        homomorphism_passed: passed,
        collision: (0, 1, shift_toward_zero(1)),
        image_min: *images.iter().min().expect("window is nonempty"),
        image_max: *images.iter().max().expect("window is nonempty"),
        missing_preimages: missing,
    })
}
