//! Entropy, zeta functions, periodic-point counts and the continued-fraction
//! coordinate of a gap shift.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::beta::{
    beta_from_parry, bisect_decreasing, rat_from_f64, require_valid, Bracket, MembershipBound,
    ParrySeq,
};
use crate::correspond::ass_of_beta;
use crate::error::{Error, Result};
use crate::gaps::{inverse_parry_word, star_condition, GapSet, Increments};
use crate::poly::{log_recip_power_sums, Poly, RationalFn};
use crate::seqcore::{EpWord, Letter};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest word length [`periodic_count`] enumerates.
pub const MAX_COUNT_N: usize = 24;

/// Closed floating-point interval, rounded outward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn log_of(b: &Bracket) -> Interval {
        let lo = b.lo_f64().ln();
        let hi = b.hi_f64().ln();
        if b.lo == b.hi {
            return Interval { lo, hi };
        }
        Interval {
            lo: lo.next_down().next_down(),
            hi: hi.next_up().next_up(),
        }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.15}, {:.15}]", self.lo, self.hi)
    }
}

fn tol_for_root(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
    }
    Ok(rat_from_f64(tol / 2.0))
}

fn poly_from_exponents(exps: impl IntoIterator<Item = usize>) -> Poly {
    exps.into_iter()
        .fold(Poly::zero(), |acc, e| acc + Poly::monomial(e))
}

/// `f_S(1/r) = 1 − Σ_{s∈S} r^{s+1}` as `num / den`, geometric tails summed.
pub fn f_s(s: &GapSet) -> Result<(Poly, Poly)> {
    match s.increments() {
        Increments::Finite(_) => {
            let a = poly_from_exponents(s.elements_below(usize::MAX).into_iter().map(|x| x + 1));
            Ok((Poly::one() - a, Poly::one()))
        }
        Increments::Periodic(w) => {
            let start = s.element(w.pre().len()).unwrap();
            let g: usize = w.period().iter().map(|&x| x as usize).sum();
            let all = s.elements_below(start + g);
            let a = poly_from_exponents(all.iter().filter(|&&x| x < start).map(|x| x + 1));
            let b = poly_from_exponents(all.iter().filter(|&&x| x >= start).map(|x| x + 1));
            let den = Poly::one() - Poly::monomial(g);
            Ok(((Poly::one() - a) * den.clone() - b, den))
        }
        Increments::Truncated { .. } => Err(Error::NotSofic),
    }
}

/// Polynomials whose sign at `r ∈ (0, 1)` is that of `Σ_{s∈S} r^{s+1} − 1`;
/// two of them (lower and upper completion) for truncated sets.
fn gap_equation(s: &GapSet) -> Vec<Poly> {
    match s.increments() {
        Increments::Truncated { horizon, .. } => {
            let head = poly_from_exponents(s.elements_below(*horizon).into_iter().map(|x| x + 1))
                - Poly::one();
            let filled =
                head.clone() * (Poly::one() - Poly::monomial(1)) + Poly::monomial(horizon + 1);
            vec![head, filled]
        }
        _ => {
            let (num, _) = f_s(s).unwrap();
            vec![-num]
        }
    }
}

fn root_bracket(eqs: &[Poly], tol: &BigRational) -> Bracket {
    let solve = |g: &Poly| {
        bisect_decreasing(
            |x| g.eval_rational(&x.recip()).cmp(&BigRational::zero()),
            tol,
        )
    };
    let first = solve(&eqs[0]);
    match eqs.get(1) {
        Some(g) => Bracket {
            lo: first.lo,
            hi: solve(g).hi,
        },
        None => first,
    }
}

/// Bracket around `log λ` with `Σ_{s∈S} λ^{−(s+1)} = 1`.
pub fn entropy_gap(s: &GapSet, tol: f64) -> Result<Interval> {
    if s.len().is_some_and(|n| n < 2) {
        return Err(Error::TooSmall);
    }
    Ok(Interval::log_of(&root_bracket(
        &gap_equation(s),
        &tol_for_root(tol)?,
    )))
}

/// Bracket around `log β`.
pub fn entropy_beta(s: &ParrySeq, tol: f64) -> Result<Interval> {
    Ok(Interval::log_of(&beta_from_parry(s, &tol_for_root(tol)?)?))
}

/// Bracket around `λ` itself.
pub fn growth_rate_gap(s: &GapSet, tol: f64) -> Result<Bracket> {
    Ok(root_bracket(&gap_equation(s), &tol_for_root(tol)?))
}

/// `1/f_S(1/r)` for finite `S`, `1/((1 − r) f_S(1/r))` for infinite `S`
/// (the extra factor counts `0^∞`).
pub fn zeta_gap(s: &GapSet) -> Result<RationalFn> {
    let (num, den) = f_s(s)?;
    let z = RationalFn::new(den, num)?;
    if s.is_finite() {
        Ok(z)
    } else {
        z.div_poly(&(Poly::one() - Poly::monomial(1)))
    }
}

/// `1/f_S(1/r)` with `S` the associated gap set; `1/(1 − 2r)` for β = 2.
pub fn zeta_beta(s: &ParrySeq) -> Result<RationalFn> {
    if !s.is_sofic() {
        return Err(Error::NotSofic);
    }
    require_valid(s)?;
    if s.is_full_shift() {
        return RationalFn::recip_of(Poly::new(vec![1, -2]));
    }
    let (num, den) = f_s(&ass_of_beta(s)?)?;
    RationalFn::new(den, num)
}

/// `1/((1 − Σ r^{i_v})(1 − r^p) − Σ r^{j_w})` without the `(1 − r^p)`
/// numerator. It miscounts periodic points and is kept as a negative control.
pub fn numerator_free_zeta_beta(s: &ParrySeq) -> Result<RationalFn> {
    require_valid(s)?;
    let ParrySeq::Periodic(w) = s else {
        return zeta_beta(s);
    };
    let (n, p) = (w.pre().len(), w.period().len());
    let ones = |from: usize, to: usize| {
        poly_from_exponents((from..to).filter(|&i| w.letter(i) == 1).map(|i| i + 1))
    };
    let head = Poly::one() - ones(0, n);
    RationalFn::recip_of(head * (Poly::one() - Poly::monomial(p)) - ones(n, n + p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PnSource {
    Series,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnTable {
    /// `p_1, …, p_N`.
    pub counts: Vec<u64>,
    pub source: PnSource,
}

/// `p_n = n · [r^n] log z(r)` for `n = 1..=count`.
pub fn series_pn(z: &RationalFn, count: usize) -> Result<PnTable> {
    if z.num.coeff(0) != 1 || z.den.coeff(0) != 1 {
        return Err(Error::NotAZeta(format!("{z} is not 1 at r = 0")));
    }
    let overflow = || Error::NotAZeta("coefficient overflow".into());
    let qd = log_recip_power_sums(&z.den, count).ok_or_else(overflow)?;
    let qn = log_recip_power_sums(&z.num, count).ok_or_else(overflow)?;
    let counts = qd
        .iter()
        .zip(&qn)
        .enumerate()
        .map(|(i, (d, n))| {
            let p = d.checked_sub(*n).ok_or_else(overflow)?;
            u64::try_from(p).map_err(|_| Error::NotAZeta(format!("p_{} = {p} is negative", i + 1)))
        })
        .collect::<Result<_>>()?;
    Ok(PnTable {
        counts,
        source: PnSource::Series,
    })
}

/// A shift whose periodic points [`periodic_count`] enumerates.
#[derive(Debug, Clone, Copy)]
pub enum System<'a> {
    Beta(&'a ParrySeq),
    Gap(&'a GapSet),
}

/// Number of points of period `n` (fixed by `σ^n`), by enumerating all
/// binary words of length `n` in parallel.
pub fn periodic_count(system: System<'_>, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if n > MAX_COUNT_N {
        return Err(Error::NTooLarge(n));
    }
    let horizon = match system {
        System::Beta(s) => s.horizon(),
        System::Gap(s) => s.horizon(),
    };
    if let Some(h) = horizon {
        if h < 2 * n {
            return Err(Error::HorizonTooSmall {
                horizon: h,
                needed: 2 * n,
            });
        }
    }
    let words = 0u32..(1u32 << n);
    match system {
        System::Gap(s) => {
            let member: Vec<bool> = (0..n).map(|m| s.contains(m) == Some(true)).collect();
            let zero = u64::from(!s.is_finite());
            Ok(zero
                + words
                    .into_par_iter()
                    .filter(|&w| w != 0 && gap_word_ok(w, n, &member))
                    .count() as u64)
        }
        System::Beta(s) => {
            require_valid(s)?;
            let bound = BetaBound::new(s, n);
            let results: Vec<Option<bool>> =
                words.into_par_iter().map(|w| bound.admits(w, n)).collect();
            if results.contains(&None) {
                let h = horizon.unwrap_or(0);
                return Err(Error::HorizonTooSmall {
                    horizon: h,
                    needed: h + n,
                });
            }
            Ok(results.into_iter().filter(|r| *r == Some(true)).count() as u64)
        }
    }
}

/// Letter `i` of `w^∞` where bit `n − 1` of `w` is the first letter.
fn letter_of(w: u32, n: usize, i: usize) -> Letter {
    (w >> (n - 1 - i % n)) & 1
}

fn gap_word_ok(w: u32, n: usize, member: &[bool]) -> bool {
    let ones: Vec<usize> = (0..n).filter(|&i| letter_of(w, n, i) == 1).collect();
    ones.iter().enumerate().all(|(j, &i)| {
        let next = ones.get(j + 1).copied().unwrap_or(ones[0] + n);
        member[next - i - 1]
    })
}

/// Letters of the membership bound, enough to decide comparisons with any
/// word of period `n`.
struct BetaBound {
    letters: Vec<Letter>,
    /// A tie over all of `letters` means equality (false when truncated).
    tie_decided: bool,
}

impl BetaBound {
    fn new(s: &ParrySeq, n: usize) -> Self {
        match s.membership_bound() {
            MembershipBound::Exact(b) => {
                let p = b.period().len();
                let len = b.pre().len() + n.lcm(&p) + n.max(p);
                BetaBound {
                    letters: b.prefix(len),
                    tie_decided: true,
                }
            }
            MembershipBound::Prefix(prefix) => BetaBound {
                letters: prefix,
                tie_decided: false,
            },
        }
    }

    /// Whether `w^∞` lies in the shift; `None` if the bound is too short.
    fn admits(&self, w: u32, n: usize) -> Option<bool> {
        let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let top = (0..n)
            .map(|k| ((w << k) | (w.checked_shr((n - k) as u32).unwrap_or(0))) & mask)
            .max()
            .unwrap_or(w);
        let top = if n == 0 { w } else { top };
        for (i, &b) in self.letters.iter().enumerate() {
            match letter_of(top, n, i).cmp(&b) {
                Ordering::Less => return Some(true),
                Ordering::Greater => return Some(false),
                Ordering::Equal => {}
            }
        }
        self.tie_decided.then_some(true)
    }
}

/// Continued fraction `[d_0; d_1, d_2, …]` of a gap set with its convergents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CFValue {
    pub quotients: Vec<u64>,
    /// `h_k / k_k` for `k = 0..quotients.len()`.
    #[serde(serialize_with = "ser_rationals")]
    pub convergents: Vec<BigRational>,
    /// All quotients of a finite set were used, so the last convergent is the value.
    pub exact: bool,
    /// The exact value is `1/n` for some `n ≥ 1`.
    pub excluded: bool,
}

fn ser_rationals<S: serde::Serializer>(
    v: &[BigRational],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(|r| r.to_string()))
}

impl CFValue {
    pub fn value(&self) -> &BigRational {
        self.convergents.last().expect("at least one convergent")
    }

    pub fn value_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::NAN)
    }
}

/// `x_S = [d_0; d_1, …]` using at most `depth` increments.
pub fn xs_value(s: &GapSet, depth: usize) -> CFValue {
    let incs = s.increments_prefix(depth);
    let exact = s.len().is_some_and(|n| incs.len() == n - 1);
    let quotients: Vec<u64> = std::iter::once(s.d0() as u64)
        .chain(incs.iter().map(|&d| d as u64))
        .collect();
    let (mut h_prev, mut k_prev) = (BigInt::one(), BigInt::zero());
    let (mut h, mut k) = (BigInt::from(quotients[0]), BigInt::one());
    let mut convergents = vec![BigRational::new(h.clone(), k.clone())];
    for &a in &quotients[1..] {
        let a = BigInt::from(a);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        (h_prev, k_prev, h, k) = (h, k, h_next, k_next);
        convergents.push(BigRational::new(h.clone(), k.clone()));
    }
    let last = convergents.last().unwrap();
    let excluded = exact && last.numer().is_one() && last.is_positive_int_recip();
    CFValue {
        quotients,
        convergents,
        exact,
        excluded,
    }
}

trait RecipCheck {
    fn is_positive_int_recip(&self) -> bool;
}

impl RecipCheck for BigRational {
    fn is_positive_int_recip(&self) -> bool {
        self.numer().is_one() && self.denom() >= &BigInt::one()
    }
}

/// Gap sets sharing the first `m` increments with `S`: one satisfying the
/// star condition, one violating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnesses {
    pub inside: GapSet,
    pub outside: GapSet,
}

/// Neighbours of `S` on both sides of the star condition.
///
/// The shared prefix is taken from `D(S)^∞` for finite `S` and from the raw
/// increments otherwise.
pub fn cantor_witness(s: &GapSet, m: usize) -> Result<Witnesses> {
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    if !star_condition(s)?.holds() {
        return Err(Error::StarFails(match star_condition(s)? {
            crate::gaps::StarVerdict::FailsAt(n) => n,
            _ => 0,
        }));
    }
    let prefix: Vec<Letter> = match s.increments() {
        Increments::Truncated { .. } => s.increments_prefix(m),
        _ => inverse_parry_word(s)?.prefix(m),
    };
    if prefix.len() < m {
        return Err(Error::PrefixTooShort {
            needed: m,
            have: prefix.len(),
        });
    }
    let mut h = 1 + *prefix.iter().max().unwrap();
    let mut inside = GapSet::periodic(0, EpWord::new(prefix.clone(), vec![h]))?;
    if inside == *s {
        h += 1;
        inside = GapSet::periodic(0, EpWord::new(prefix.clone(), vec![h]))?;
    }
    let mut out_pre = prefix;
    out_pre.push(2);
    let outside = GapSet::periodic(0, EpWord::new(out_pre, vec![1]))?;
    if !star_condition(&inside)?.holds() || star_condition(&outside)?.holds() {
        return Err(Error::Invalid("witness verification failed".into()));
    }
    Ok(Witnesses { inside, outside })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gap(s: &str) -> GapSet {
        s.parse().unwrap()
    }

    fn parry(s: &str) -> ParrySeq {
        s.parse().unwrap()
    }

    fn p(c: &[i128]) -> Poly {
        Poly::new(c.to_vec())
    }

    fn rf(num: &[i128], den: &[i128]) -> RationalFn {
        RationalFn::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn golden_entropy() {
        let e = entropy_gap(&gap("{0,1}"), DEFAULT_TOL).unwrap();
        assert!(e.contains(0.481_211_825_059_603_4));
        assert!(e.width() <= DEFAULT_TOL);
        let b = entropy_beta(&parry("1,1"), DEFAULT_TOL).unwrap();
        assert!((b.mid() - e.mid()).abs() <= 2.0 * DEFAULT_TOL);
    }

    #[test]
    fn entropy_full_shift_is_log_two() {
        let e = entropy_beta(&ParrySeq::full_shift(), DEFAULT_TOL).unwrap();
        assert_eq!((e.lo, e.hi), (2f64.ln(), 2f64.ln()));
    }

    #[test]
    fn entropy_strictly_sofic_pair() {
        let b = entropy_beta(&parry("1(1,0)*"), DEFAULT_TOL).unwrap();
        let g = entropy_gap(&gap("0;1,(2)*"), DEFAULT_TOL).unwrap();
        assert!(b.contains(1.801_937_735_804_838_f64.ln()));
        assert!((b.mid() - g.mid()).abs() <= 2.0 * DEFAULT_TOL);
    }

    #[test]
    fn entropy_too_small() {
        assert_eq!(entropy_gap(&gap("{0}"), DEFAULT_TOL), Err(Error::TooSmall));
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_gap(&gap("{0,1}")).unwrap(), rf(&[1], &[1, -1, -1]));
        assert_eq!(
            zeta_gap(&gap("{0,3}")).unwrap(),
            rf(&[1], &[1, -1, 0, 0, -1])
        );
        assert_eq!(
            zeta_gap(&gap("0;1,(2)*")).unwrap(),
            rf(&[1, 0, -1], &[1, -2, -1, 3, -1])
        );
        assert_eq!(zeta_beta(&parry("1,1")).unwrap(), rf(&[1], &[1, -1, -1]));
        assert_eq!(
            zeta_beta(&parry("1,1,0,1")).unwrap(),
            rf(&[1], &[1, -1, -1, 0, -1])
        );
        assert_eq!(
            zeta_beta(&parry("1(1,0)*")).unwrap(),
            rf(&[1, 0, -1], &[1, -1, -2, 1])
        );
        assert_eq!(
            zeta_beta(&ParrySeq::full_shift()).unwrap(),
            rf(&[1], &[1, -2])
        );
        assert_eq!(zeta_gap(&gap("trunc:0;1,3@10")), Err(Error::NotSofic));
    }

    #[test]
    fn series_examples() {
        assert_eq!(
            series_pn(&rf(&[1], &[1, -1, -1]), 4).unwrap().counts,
            vec![1, 3, 4, 7]
        );
        assert_eq!(
            series_pn(&rf(&[1], &[1, -1]), 3).unwrap().counts,
            vec![1, 1, 1]
        );
        assert_eq!(
            series_pn(&rf(&[1, 0, -1], &[1, -1, -2, 1]), 2)
                .unwrap()
                .counts,
            vec![1, 3]
        );
        assert!(matches!(
            series_pn(&rf(&[1, -2], &[1]), 2),
            Err(Error::NotAZeta(_))
        ));
    }

    #[test]
    fn numerator_free_form_overcounts() {
        let z = numerator_free_zeta_beta(&parry("1(1,0)*")).unwrap();
        assert_eq!(series_pn(&z, 2).unwrap().counts, vec![1, 5]);
    }

    #[test]
    fn brute_force_counts() {
        let s = gap("0;1,(2)*");
        assert_eq!(periodic_count(System::Gap(&s), 2).unwrap(), 4);
        assert_eq!(periodic_count(System::Gap(&s), 1).unwrap(), 2);
        let b = parry("1(1,0)*");
        assert_eq!(periodic_count(System::Beta(&b), 2).unwrap(), 3);
        assert_eq!(periodic_count(System::Beta(&b), 1).unwrap(), 1);
        assert_eq!(periodic_count(System::Beta(&parry("1,1")), 3).unwrap(), 4);
        assert_eq!(
            periodic_count(System::Beta(&ParrySeq::full_shift()), 5).unwrap(),
            32
        );
    }

    #[test]
    fn brute_force_errors() {
        let s = gap("{0,1}");
        assert_eq!(
            periodic_count(System::Gap(&s), 25),
            Err(Error::NTooLarge(25))
        );
        let t = gap("trunc:0;1,3@10");
        assert_eq!(
            periodic_count(System::Gap(&t), 6),
            Err(Error::HorizonTooSmall {
                horizon: 10,
                needed: 12
            })
        );
    }

    #[test]
    fn continued_fractions() {
        let x = xs_value(&gap("{0,2,3}"), 10);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(x.convergents, vec![r(0, 1), r(1, 2), r(1, 3)]);
        assert!(x.exact && x.excluded);
        let x = xs_value(&gap("{0,1}"), 10);
        assert_eq!(x.value(), &r(1, 1));
        let x = xs_value(&gap("0;1,(2)*"), 20);
        assert!((x.value_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(!x.exact);
    }

    #[test]
    fn witnesses() {
        let w = cantor_witness(&gap("{0,1}"), 1).unwrap();
        assert_eq!(w.inside, gap("0;2,(3)*"));
        assert_eq!(w.outside, gap("0;2,2,(1)*"));
        let w = cantor_witness(&gap("0;1,(2)*"), 2).unwrap();
        assert_eq!(w.inside, gap("0;1,2,(3)*"));
        assert_eq!(w.outside, gap("0;1,2,2,(1)*"));
        assert_eq!(
            cantor_witness(&gap("0;(2,1)*"), 1),
            Err(Error::StarFails(2))
        );
        assert!(matches!(
            cantor_witness(&gap("trunc:0;1,3@10"), 3),
            Err(Error::PrefixTooShort { needed: 3, have: 2 })
        ));
    }
}
