//! Residual finiteness and Hopficity of `BS(m, n)` and of its conjugation
//! quandle.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

fn check_nonzero(m: i64, n: i64) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroParameter("m"));
    }
    if n == 0 {
        return Err(Error::ZeroParameter("n"));
    }
    Ok(())
}

/// The primes dividing `k`, by trial division.
pub fn prime_support(k: i64) -> Result<BTreeSet<u64>> {
    if k == 0 {
        return Err(Error::ZeroParameter("k"));
    }
    let mut rest = k.unsigned_abs();
    let mut primes = BTreeSet::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            primes.insert(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.insert(rest);
    }
    Ok(primes)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `|m| = 1` or `|n| = 1` or `|m| = |n|`.
pub fn bs_residually_finite(m: i64, n: i64) -> Result<bool> {
    check_nonzero(m, n)?;
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    Ok(am == 1 || an == 1 || am == an)
}

/// Residually finite, or `m` and `n` have the same prime divisors.
pub fn bs_hopfian(m: i64, n: i64) -> Result<bool> {
    Ok(bs_residually_finite(m, n)? || prime_support(m)? == prime_support(n)?)
}

/// Residual finiteness of `Conj(BS(m, n))`. Same criterion as for the group.
pub fn conj_bs_residually_finite(m: i64, n: i64) -> Result<bool> {
    check_nonzero(m, n)?;
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    Ok(am == 1 || an == 1 || am == an)
}

/// An unresolved Hopf question for `Conj(BS(m, n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenQuestion {
    /// The residually finite cases `|m| = 1`, `|n| = 1` or `|m| = |n|`.
    Q1,
    /// The non-residually-finite cases with equal prime supports.
    Q2,
}

impl OpenQuestion {
    pub fn statement(&self) -> &'static str {
        match self {
            OpenQuestion::Q1 => "is Conj(BS(m,n)) Hopfian when |m|=1, |n|=1 or |m|=|n|?",
            OpenQuestion::Q2 => "is Conj(BS(m,n)) Hopfian when pi(m)=pi(n)?",
        }
    }
}

/// Known Hopf status of `Conj(BS(m, n))`; a positive answer is never known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfStatus {
    NonHopfian,
    Open(OpenQuestion),
}

impl fmt::Display for HopfStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfStatus::NonHopfian => f.write_str("NonHopfian"),
            HopfStatus::Open(q) => write!(f, "Open({q:?})"),
        }
    }
}

/// A non-Hopfian group has a non-Hopfian conjugation quandle; nothing else
/// is decided.
pub fn conj_bs_hopf_status(m: i64, n: i64) -> Result<HopfStatus> {
    if !bs_hopfian(m, n)? {
        Ok(HopfStatus::NonHopfian)
    } else if bs_residually_finite(m, n)? {
        Ok(HopfStatus::Open(OpenQuestion::Q1))
    } else {
        Ok(HopfStatus::Open(OpenQuestion::Q2))
    }
}

/// Which branch of the non-residual-finiteness argument applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseRoute {
    /// `|m| = 1`, `|n| = 1` or `|m| = |n|`.
    Rf,
    /// Different prime supports.
    Case1,
    /// One parameter divides the other, equal prime supports.
    Case2,
    /// Neither divides the other, equal prime supports; reduces to
    /// `BS(m/k, n/k)` with `k = gcd(|m|, |n|)`, which is in Case 1.
    Case3 { gcd: u64, reduced: (i64, i64) },
}

impl fmt::Display for CaseRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseRoute::Rf => f.write_str("RF"),
            CaseRoute::Case1 => f.write_str("Case1"),
            CaseRoute::Case2 => f.write_str("Case2"),
            CaseRoute::Case3 { .. } => f.write_str("Case3"),
        }
    }
}

pub fn route_case(m: i64, n: i64) -> Result<CaseRoute> {
    if conj_bs_residually_finite(m, n)? {
        return Ok(CaseRoute::Rf);
    }
    if prime_support(m)? != prime_support(n)? {
        return Ok(CaseRoute::Case1);
    }
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    if an % am == 0 || am % an == 0 {
        return Ok(CaseRoute::Case2);
    }
    let k = gcd(am, an);
    // k divides both and k >= 2, so the quotients fit in i64
    let reduced = (
        (m as i128 / k as i128) as i64,
        (n as i128 / k as i128) as i64,
    );
    Ok(CaseRoute::Case3 { gcd: k, reduced })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub m: i64,
    pub n: i64,
    pub prime_support_m: BTreeSet<u64>,
    pub prime_support_n: BTreeSet<u64>,
    pub group_rf: bool,
    pub group_hopf: bool,
    pub conj_rf: bool,
    pub conj_hopf: HopfStatus,
    pub route: CaseRoute,
    /// `Conj(BS(m, n))` is never finitely generated: the abelianization
    /// separates the conjugacy classes of the powers of `b`.
    pub conj_infinitely_generated: bool,
}

pub fn classify(m: i64, n: i64) -> Result<Classification> {
    check_nonzero(m, n)?;
    Ok(Classification {
        m,
        n,
        prime_support_m: prime_support(m)?,
        prime_support_n: prime_support(n)?,
        group_rf: bs_residually_finite(m, n)?,
        group_hopf: bs_hopfian(m, n)?,
        conj_rf: conj_bs_residually_finite(m, n)?,
        conj_hopf: conj_bs_hopf_status(m, n)?,
        route: route_case(m, n)?,
        conj_infinitely_generated: true,
    })
}

fn set_text(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for Classification {
    /// Stable `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "prime_support_m={}", set_text(&self.prime_support_m))?;
        writeln!(f, "prime_support_n={}", set_text(&self.prime_support_n))?;
        writeln!(f, "group_rf={}", self.group_rf)?;
        writeln!(f, "group_hopf={}", self.group_hopf)?;
        writeln!(f, "conj_rf={}", self.conj_rf)?;
        writeln!(f, "conj_hopf={}", self.conj_hopf)?;
        if let HopfStatus::Open(q) = self.conj_hopf {
            writeln!(f, "open_question={}", q.statement())?;
        }
        writeln!(f, "route={}", self.route)?;
        if let CaseRoute::Case3 { gcd, reduced } = self.route {
            writeln!(f, "gcd={gcd}")?;
            writeln!(f, "reduced=({},{})", reduced.0, reduced.1)?;
        }
        writeln!(
            f,
            "conj_infinitely_generated={}",
            self.conj_infinitely_generated
        )
    }
}
