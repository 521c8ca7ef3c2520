//! Expansions of 1 in base β ∈ (1, 2]: validation, greedy digits, numeric β and
//! classification of the associated β-shift.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::seqcore::{join, lex_compare, parse_word, EpWord, Letter};

/// A candidate expansion of 1 over the digits {0, 1} with leading digit 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParrySeq {
    /// `a_1 … a_n` followed by zeros; `a_n = 1`.
    Finite(Vec<Letter>),
    /// Eventually periodic and not eventually zero.
    Periodic(EpWord),
    /// The first `prefix.len()` digits of a longer sequence.
    Truncated { prefix: Vec<Letter> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BetaClass {
    #[serde(rename = "SFT")]
    Sft,
    StrictlySofic,
    NonSoficSynchronizedUnknown,
}

/// Outcome of checking `σ^k s ≤ s` for every `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParryVerdict {
    Valid,
    /// `σ^k s > s` for this (least) `k`.
    InvalidAt(usize),
    /// No violation among the known digits.
    ValidToHorizon(usize),
    /// Purely periodic `w^∞` with `σ^{|w|} s = s`: it is the quasi-greedy
    /// expansion of the finite expansion carried here, not a greedy one.
    QuasiGreedyOf(Vec<Letter>),
}

impl ParryVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ParryVerdict::Valid | ParryVerdict::ValidToHorizon(_))
    }
}

impl fmt::Display for ParryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParryVerdict::Valid => write!(f, "Valid"),
            ParryVerdict::InvalidAt(k) => write!(f, "InvalidAt({k})"),
            ParryVerdict::ValidToHorizon(h) => write!(f, "ValidToHorizon({h})"),
            ParryVerdict::QuasiGreedyOf(w) => write!(f, "QuasiGreedyOf({})", join(w)),
        }
    }
}

/// The word used as the upper bound for membership in `X_β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipBound {
    Exact(EpWord),
    Prefix(Vec<Letter>),
}

fn check_digits(digits: &[Letter]) -> Result<()> {
    if digits.first() != Some(&1) {
        return Err(Error::Invalid("expansion must start with digit 1".into()));
    }
    if digits.iter().any(|&d| d > 1) {
        return Err(Error::Invalid("digits must be 0 or 1".into()));
    }
    Ok(())
}

impl ParrySeq {
    pub fn finite(digits: Vec<Letter>) -> Result<Self> {
        check_digits(&digits)?;
        if digits.last() != Some(&1) {
            return Err(Error::Invalid("finite expansion must end in 1".into()));
        }
        if digits.len() < 2 {
            return Err(Error::BetaOutOfRange("expansion 1 gives beta = 1".into()));
        }
        Ok(ParrySeq::Finite(digits))
    }

    /// Eventually zero words are stored as [`ParrySeq::Finite`].
    pub fn periodic(word: EpWord) -> Result<Self> {
        if word.is_eventually(0) {
            return Self::finite(word.pre().to_vec());
        }
        check_digits(&word.prefix(1))?;
        if word.max_letter() > 1 {
            return Err(Error::Invalid("digits must be 0 or 1".into()));
        }
        Ok(ParrySeq::Periodic(word))
    }

    pub fn truncated(prefix: Vec<Letter>) -> Result<Self> {
        check_digits(&prefix)?;
        Ok(ParrySeq::Truncated { prefix })
    }

    /// Digits `a_i = 1` iff `is_one(i)` for `1 ≤ i ≤ horizon`.
    pub fn truncated_from_fn(horizon: usize, is_one: impl Fn(usize) -> bool) -> Result<Self> {
        Self::truncated((1..=horizon).map(|i| is_one(i) as Letter).collect())
    }

    /// The all-ones expansion, β = 2.
    pub fn full_shift() -> Self {
        ParrySeq::Periodic(EpWord::periodic(vec![1]))
    }

    pub fn is_full_shift(&self) -> bool {
        matches!(self, ParrySeq::Periodic(w) if w.is_purely_periodic() && w.period() == [1])
    }

    pub fn is_sofic(&self) -> bool {
        !matches!(self, ParrySeq::Truncated { .. })
    }

    /// Digit `a_i`, 1-based. `None` past the horizon of a truncated sequence.
    pub fn digit(&self, i: usize) -> Option<Letter> {
        assert!(i >= 1);
        match self {
            ParrySeq::Finite(d) => Some(d.get(i - 1).copied().unwrap_or(0)),
            ParrySeq::Periodic(w) => Some(w.letter(i - 1)),
            ParrySeq::Truncated { prefix } => prefix.get(i - 1).copied(),
        }
    }

    pub fn horizon(&self) -> Option<usize> {
        match self {
            ParrySeq::Truncated { prefix } => Some(prefix.len()),
            _ => None,
        }
    }

    /// As an infinite word (zero fill for finite expansions).
    pub fn as_ep(&self) -> Option<EpWord> {
        match self {
            ParrySeq::Finite(d) => Some(EpWord::from_finite(d.clone(), 0)),
            ParrySeq::Periodic(w) => Some(w.clone()),
            ParrySeq::Truncated { .. } => None,
        }
    }

    /// Quasi-greedy bound: `(a_1 … a_{n-1}(a_n - 1))^∞` for finite
    /// expansions, the sequence itself otherwise.
    pub fn membership_bound(&self) -> MembershipBound {
        match self {
            ParrySeq::Finite(d) => {
                let mut w = d.clone();
                *w.last_mut().unwrap() -= 1;
                MembershipBound::Exact(EpWord::periodic(w))
            }
            ParrySeq::Periodic(w) => MembershipBound::Exact(w.clone()),
            ParrySeq::Truncated { prefix } => MembershipBound::Prefix(prefix.clone()),
        }
    }
}

impl fmt::Display for ParrySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParrySeq::Finite(d) => write!(f, "{}", join(d)),
            ParrySeq::Periodic(w) => write!(f, "{w}"),
            ParrySeq::Truncated { prefix } => {
                write!(f, "trunc:{},...@{}", join(prefix), prefix.len())
            }
        }
    }
}

impl FromStr for ParrySeq {
    type Err = Error;

    /// `1,1`, `1(1,0)*` or `trunc:1,1,0,...@40` (unlisted digits below the
    /// horizon are 0).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("trunc:") {
            let (prefix, horizon) = parse_truncated(rest, 6)?;
            let mut digits = parse_word(prefix, 6)?;
            if digits.period.is_some() {
                return Err(Error::Syntax {
                    position: 6,
                    expected: "a finite digit list".into(),
                });
            }
            if digits.pre.len() > horizon {
                return Err(Error::Invalid("more digits listed than the horizon".into()));
            }
            digits.pre.resize(horizon, 0);
            return ParrySeq::truncated(digits.pre);
        }
        let w = parse_word(s, 0)?;
        match w.period {
            Some(p) => ParrySeq::periodic(EpWord::new(w.pre, p)),
            None => ParrySeq::finite(w.pre),
        }
    }
}

/// Splits `a,b,c,...@H` into the listed part and `H`.
pub(crate) fn parse_truncated(text: &str, offset: usize) -> Result<(&str, usize)> {
    let at = text.rfind('@').ok_or(Error::Syntax {
        position: offset + text.len(),
        expected: "'@horizon'".into(),
    })?;
    let horizon = text[at + 1..].parse::<usize>().map_err(|_| Error::Syntax {
        position: offset + at + 1,
        expected: "an integer horizon".into(),
    })?;
    let listed = text[..at].trim_end_matches("...").trim_end_matches(',');
    Ok((listed, horizon))
}

/// Checks `σ^k s ≤ s` for all `k ≥ 1`.
pub fn validate_parry(s: &ParrySeq) -> ParryVerdict {
    match s {
        ParrySeq::Truncated { prefix } => {
            let h = prefix.len();
            for k in 1..h {
                let cmp = prefix[k..]
                    .iter()
                    .zip(prefix)
                    .map(|(a, b)| a.cmp(b))
                    .find(|o| o.is_ne());
                if cmp == Some(Ordering::Greater) {
                    return ParryVerdict::InvalidAt(k);
                }
            }
            ParryVerdict::ValidToHorizon(h)
        }
        _ => {
            let w = s.as_ep().unwrap();
            for k in 1..=w.orbit_len() {
                match lex_compare(&w.shift(k), &w) {
                    Ordering::Greater => return ParryVerdict::InvalidAt(k),
                    Ordering::Equal if !s.is_full_shift() => {
                        let mut finite = w.period().to_vec();
                        *finite.last_mut().unwrap() += 1;
                        return ParryVerdict::QuasiGreedyOf(finite);
                    }
                    _ => {}
                }
            }
            ParryVerdict::Valid
        }
    }
}

pub(crate) fn require_valid(s: &ParrySeq) -> Result<()> {
    match validate_parry(s) {
        v if v.is_valid() => Ok(()),
        v => Err(Error::NotValidated(format!("{s}: {v}"))),
    }
}

pub fn classify_beta(s: &ParrySeq) -> BetaClass {
    match s {
        ParrySeq::Finite(_) => BetaClass::Sft,
        // X_2 is the full 2-shift.
        s if s.is_full_shift() => BetaClass::Sft,
        ParrySeq::Periodic(_) => BetaClass::StrictlySofic,
        ParrySeq::Truncated { .. } => BetaClass::NonSoficSynchronizedUnknown,
    }
}

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn point(x: BigRational) -> Self {
        Bracket {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains(&rat_from_f64(x))
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap()
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap()
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.15}, {:.15}]", self.lo_f64(), self.hi_f64())
    }
}

pub fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Root in `[1, 2]` of a function that is non-negative at 1, non-positive at 2
/// and decreasing in between, located by exact bisection.
pub(crate) fn bisect_decreasing(
    sign_at: impl Fn(&BigRational) -> Ordering,
    tol: &BigRational,
) -> Bracket {
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(2.into());
    if sign_at(&hi) == Ordering::Equal {
        return Bracket::point(hi);
    }
    if sign_at(&lo) == Ordering::Equal {
        return Bracket::point(lo);
    }
    let two = BigInt::from(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        match sign_at(&mid) {
            Ordering::Equal => return Bracket::point(mid),
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
        }
    }
    Bracket { lo, hi }
}

/// `g(r)` whose sign equals the sign of `Σ a_i r^i - 1` for `r ∈ (0, 1)`.
pub(crate) fn parry_equation(s: &ParrySeq) -> Vec<Poly> {
    let poly_of = |digits: &[Letter], start: usize| {
        let mut c = vec![0i128; start + digits.len() + 1];
        for (i, &d) in digits.iter().enumerate() {
            c[start + i + 1] = d as i128;
        }
        Poly::new(c)
    };
    let one = Poly::one();
    match s {
        ParrySeq::Finite(d) => vec![poly_of(d, 0) - one],
        ParrySeq::Periodic(w) => {
            let (n, p) = (w.pre().len(), w.period().len());
            let head = poly_of(w.pre(), 0) - one.clone();
            let tail = poly_of(w.period(), n);
            vec![head * (one - Poly::monomial(p)) + tail]
        }
        ParrySeq::Truncated { prefix } => {
            let h = prefix.len();
            let head = poly_of(prefix, 0) - one.clone();
            let all_ones = head.clone() * (one - Poly::monomial(1)) + Poly::monomial(h + 1);
            vec![head, all_ones]
        }
    }
}

/// Bracket around the β in (1, 2] with `1 = Σ a_i β^{-i}`.
///
/// Truncated sequences give the hull of the brackets for the all-zero and
/// all-one completions.
pub fn beta_from_parry(s: &ParrySeq, tol: &BigRational) -> Result<Bracket> {
    require_valid(s)?;
    let eqs = parry_equation(s);
    let solve = |g: &Poly| {
        bisect_decreasing(
            |x| {
                let r = x.recip();
                g.eval_rational(&r).cmp(&BigRational::zero())
            },
            tol,
        )
    };
    let first = solve(&eqs[0]);
    Ok(match eqs.get(1) {
        Some(g) => Bracket {
            lo: first.lo,
            hi: solve(g).hi,
        },
        None => first,
    })
}

/// Digits of the greedy expansion of 1 with an uncertainty flag per digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyDigits {
    pub digits: Vec<Letter>,
    pub certain: Vec<bool>,
    pub precision: u32,
}

impl GreedyDigits {
    pub fn first_uncertain(&self) -> Option<usize> {
        self.certain.iter().position(|c| !c)
    }
}

pub const DEFAULT_PRECISION: u32 = 40;

pub(crate) fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Syntax {
        position: 0,
        expected: "a decimal number".into(),
    };
    let t = text.trim();
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty()
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(
        digits,
        BigInt::from(10).pow(frac.len() as u32),
    ))
}

fn round_to(x: &BigRational, scale: &BigInt, up: bool) -> BigRational {
    let scaled = x * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    n / BigRational::from_integer(scale.clone())
}

/// Greedy digits `a_i = ⌊β r_{i-1}⌋`, `r_i = β r_{i-1} - a_i`, `r_0 = 1`,
/// in fixed-point interval arithmetic with `precision` fractional bits.
///
/// A digit whose enclosure straddles an integer is reported as uncertain and
/// resolved to the larger candidate.
pub fn greedy_expand(beta: &str, horizon: usize, precision: u32) -> Result<GreedyDigits> {
    let b = parse_decimal(beta)?;
    let one = BigRational::one();
    if b <= one || b >= BigRational::from_integer(2.into()) {
        return Err(Error::BetaOutOfRange(beta.to_string()));
    }
    let scale = BigInt::one() << precision;
    let (b_lo, b_hi) = (round_to(&b, &scale, false), round_to(&b, &scale, true));
    let (mut r_lo, mut r_hi) = (one.clone(), one);
    let mut out = GreedyDigits {
        digits: Vec::new(),
        certain: Vec::new(),
        precision,
    };
    for i in 1..=horizon {
        let p_lo = round_to(&(&b_lo * &r_lo), &scale, false);
        let p_hi = round_to(&(&b_hi * &r_hi), &scale, true);
        let (d_lo, d_hi) = (p_lo.floor(), p_hi.floor());
        let digit = d_hi.clone();
        let certain = d_lo == d_hi;
        if &d_hi - &d_lo > BigRational::one() || digit > BigRational::one() {
            return Err(Error::PrecisionExhausted {
                position: i,
                precision,
            });
        }
        r_lo = (&p_lo - &digit).max(BigRational::zero());
        r_hi = &p_hi - &digit;
        out.digits.push(digit.to_integer().to_u32().unwrap());
        out.certain.push(certain);
    }
    Ok(out)
}

/// Like [`greedy_expand`] but doubles the precision until every digit up to
/// the horizon is certain.
pub fn greedy_expand_adaptive(
    beta: &str,
    horizon: usize,
    precision: u32,
    max_precision: u32,
) -> Result<GreedyDigits> {
    let mut p = precision.max(1);
    loop {
        let g = greedy_expand(beta, horizon, p)?;
        match g.first_uncertain() {
            None => return Ok(g),
            Some(i) if p >= max_precision => {
                return Err(Error::PrecisionExhausted {
                    position: i + 1,
                    precision: p,
                })
            }
            Some(_) => p = (p * 2).min(max_precision),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ParrySeq {
        s.parse().unwrap()
    }

    fn tol() -> BigRational {
        rat_from_f64(1e-12)
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_parry(&parse("1,1")), ParryVerdict::Valid);
        assert_eq!(
            validate_parry(&parse("1,0,1,1")),
            ParryVerdict::InvalidAt(2)
        );
        assert_eq!(validate_parry(&parse("1(1,0)*")), ParryVerdict::Valid);
        assert_eq!(validate_parry(&parse("(1)*")), ParryVerdict::Valid);
        assert_eq!(
            validate_parry(&parse("(1,0)*")),
            ParryVerdict::QuasiGreedyOf(vec![1, 1])
        );
        assert_eq!(
            validate_parry(&parse("trunc:1,1,0,0,1,...@12")),
            ParryVerdict::ValidToHorizon(12)
        );
        assert_eq!(
            validate_parry(&parse("trunc:1,0,1,1@4")),
            ParryVerdict::InvalidAt(2)
        );
    }

    #[test]
    fn shape_errors() {
        assert!("0,1".parse::<ParrySeq>().is_err());
        assert!("1,0".parse::<ParrySeq>().is_err());
        assert!("1,2".parse::<ParrySeq>().is_err());
        assert!("1".parse::<ParrySeq>().is_err());
        assert_eq!(parse("1,1(0)*"), parse("1,1"));
    }

    #[test]
    fn greedy_three_halves() {
        let g = greedy_expand("1.5", 6, DEFAULT_PRECISION).unwrap();
        assert_eq!(g.digits, vec![1, 0, 1, 0, 0, 0]);
        assert!(g.certain.iter().all(|&c| c));
    }

    #[test]
    fn greedy_golden_is_boundary() {
        let g = greedy_expand("1.61803398874989", 5, DEFAULT_PRECISION).unwrap();
        assert_eq!(g.digits, vec![1, 1, 0, 0, 0]);
        assert_eq!(g.first_uncertain(), Some(1));
        // the decimal sits just below the golden mean
        let g = greedy_expand("1.61803398874989", 5, 128).unwrap();
        assert_eq!(g.digits, vec![1, 0, 1, 0, 1]);
        assert!(g.first_uncertain().is_none());
    }

    #[test]
    fn greedy_cubic() {
        let g = greedy_expand("1.80193773580", 7, DEFAULT_PRECISION).unwrap();
        assert_eq!(g.digits, vec![1, 1, 0, 1, 0, 1, 0]);
        assert!(g.first_uncertain().is_none());
    }

    #[test]
    fn greedy_rejects_out_of_range() {
        assert!(matches!(
            greedy_expand("2.0", 3, 40),
            Err(Error::BetaOutOfRange(_))
        ));
        assert!(matches!(
            greedy_expand("1", 3, 40),
            Err(Error::BetaOutOfRange(_))
        ));
        assert!(greedy_expand("abc", 3, 40).is_err());
    }

    #[test]
    fn adaptive_gives_up_on_exact_boundary() {
        // 16 bits cannot separate this decimal from the golden mean
        assert!(matches!(
            greedy_expand_adaptive("1.61803398874989", 5, 8, 16),
            Err(Error::PrecisionExhausted { .. })
        ));
        let g = greedy_expand_adaptive("1.61803398874989", 5, 8, 256).unwrap();
        assert!(g.first_uncertain().is_none());
    }

    #[test]
    fn beta_brackets() {
        let b = beta_from_parry(&parse("1,1"), &tol()).unwrap();
        assert!(b.contains_f64(1.618_033_988_749_895));
        assert!(b.width() <= tol());
        let b = beta_from_parry(&parse("1(1,0)*"), &tol()).unwrap();
        let x = 1.801_937_735_804_838_3_f64;
        assert!((b.lo_f64() - x).abs() < 1e-11);
        assert_eq!(
            beta_from_parry(&parse("(1)*"), &tol()).unwrap(),
            Bracket::point(BigRational::from_integer(2.into()))
        );
        assert!(matches!(
            beta_from_parry(&parse("1,0,1,1"), &tol()),
            Err(Error::NotValidated(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_beta(&parse("1,1")), BetaClass::Sft);
        assert_eq!(classify_beta(&parse("1(1,0)*")), BetaClass::StrictlySofic);
        let squares = ParrySeq::truncated_from_fn(40, |i| {
            let r = ((i - 1) as f64).sqrt() as usize;
            r * r == i - 1
        })
        .unwrap();
        assert_eq!(
            classify_beta(&squares),
            BetaClass::NonSoficSynchronizedUnknown
        );
    }

    #[test]
    fn quasi_greedy_bound() {
        assert_eq!(
            parse("1,1").membership_bound(),
            MembershipBound::Exact(EpWord::periodic(vec![1, 0]))
        );
    }
}
