//! Gap sets `S ⊆ ℕ ∪ {0}` of S-gap shifts, encoded by `d_0 = s_0` and the
//! increment sequence `d_i = s_i - s_{i-1}`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::beta::parse_truncated;
use crate::error::{Error, Result};
use crate::seqcore::{join, lex_compare, parse_word, EpWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Increments {
    Finite(Vec<Letter>),
    /// Eventually periodic: `S` is infinite and `X(S)` sofic.
    Periodic(EpWord),
    /// Membership is known below `horizon` only; every listed element is
    /// below it and every other integer below it is absent.
    Truncated {
        incs: Vec<Letter>,
        horizon: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapSet {
    d0: usize,
    incs: Increments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapClass {
    #[serde(rename = "SFT")]
    Sft,
    #[serde(rename = "AFTnotSFT")]
    AftNotSft,
    SoficNotAFT,
    NonSofic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StarVerdict {
    Holds,
    FailsAt(usize),
    HoldsToHorizon(usize),
    HoldsByMonotonicity,
}

impl StarVerdict {
    pub fn holds(self) -> bool {
        !matches!(self, StarVerdict::FailsAt(_))
    }
}

impl fmt::Display for StarVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarVerdict::Holds => write!(f, "Holds"),
            StarVerdict::FailsAt(n) => write!(f, "FailsAt({n})"),
            StarVerdict::HoldsToHorizon(n) => write!(f, "HoldsToHorizon({n})"),
            StarVerdict::HoldsByMonotonicity => write!(f, "HoldsByMonotonicity"),
        }
    }
}

/// Shape parameters of an eventually periodic `Δ(S) = {d_0, …, d_{k-1}, (g_0 … g_{l-1})^∞}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaShape {
    pub k: usize,
    pub l: usize,
    /// `g = Σ g_j`.
    pub g: usize,
    pub d_last: usize,
    pub g_last: usize,
}

fn check_incs(incs: &[Letter]) -> Result<()> {
    if incs.contains(&0) {
        return Err(Error::Invalid("increments must be positive".into()));
    }
    Ok(())
}

impl GapSet {
    /// From strictly increasing values.
    pub fn from_list(values: &[usize]) -> Result<Self> {
        let (&d0, _) = values.split_first().ok_or(Error::EmptySet)?;
        let incs = values
            .windows(2)
            .map(|w| {
                if w[1] > w[0] {
                    Ok((w[1] - w[0]) as Letter)
                } else {
                    Err(Error::Invalid("values must be strictly increasing".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GapSet {
            d0,
            incs: Increments::Finite(incs),
        })
    }

    pub fn finite(d0: usize, incs: Vec<Letter>) -> Result<Self> {
        check_incs(&incs)?;
        Ok(GapSet {
            d0,
            incs: Increments::Finite(incs),
        })
    }

    pub fn periodic(d0: usize, incs: EpWord) -> Result<Self> {
        check_incs(incs.pre())?;
        check_incs(incs.period())?;
        Ok(GapSet {
            d0,
            incs: Increments::Periodic(incs),
        })
    }

    pub fn truncated(d0: usize, incs: Vec<Letter>, horizon: usize) -> Result<Self> {
        check_incs(&incs)?;
        let last = d0 + incs.iter().map(|&d| d as usize).sum::<usize>();
        if last >= horizon {
            return Err(Error::Invalid(format!(
                "element {last} is not below the horizon {horizon}"
            )));
        }
        Ok(GapSet {
            d0,
            incs: Increments::Truncated { incs, horizon },
        })
    }

    /// `S ∩ [0, horizon)` given by a predicate, as a truncated set.
    pub fn truncated_from_fn(horizon: usize, member: impl Fn(usize) -> bool) -> Result<Self> {
        let values: Vec<usize> = (0..horizon).filter(|&m| member(m)).collect();
        let (&d0, _) = values.split_first().ok_or(Error::EmptySet)?;
        let incs = values.windows(2).map(|w| (w[1] - w[0]) as Letter).collect();
        GapSet::truncated(d0, incs, horizon)
    }

    /// `S = {i : x_i = 1}` for an eventually periodic 0/1 indicator word.
    pub fn from_indicator(ind: &EpWord) -> Result<Self> {
        let prelen = ind.pre().len();
        let p = ind.period().len();
        if !ind.period().contains(&1) {
            let values: Vec<usize> = (0..prelen).filter(|&i| ind.letter(i) == 1).collect();
            return GapSet::from_list(&values);
        }
        let ones: Vec<usize> = (0..prelen + 2 * p)
            .filter(|&i| ind.letter(i) == 1)
            .collect();
        let l = ind.period().iter().filter(|&&x| x == 1).count();
        let j0 = ones.iter().position(|&q| q >= prelen).unwrap();
        let d: Vec<Letter> = ones.windows(2).map(|w| (w[1] - w[0]) as Letter).collect();
        // d[i] = s_{i+1} - s_i; increments become periodic once s_i >= prelen.
        let pre = d[..j0].to_vec();
        let period = d[j0..j0 + l].to_vec();
        GapSet::periodic(ones[0], EpWord::new(pre, period))
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    pub fn increments(&self) -> &Increments {
        &self.incs
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.incs, Increments::Finite(_))
    }

    pub fn is_sofic(&self) -> bool {
        !matches!(self.incs, Increments::Truncated { .. })
    }

    pub fn horizon(&self) -> Option<usize> {
        match self.incs {
            Increments::Truncated { horizon, .. } => Some(horizon),
            _ => None,
        }
    }

    /// `|S|` for finite sets.
    pub fn len(&self) -> Option<usize> {
        match &self.incs {
            Increments::Finite(d) => Some(d.len() + 1),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Increment `d_i`, `i ≥ 1`, when it exists and is known.
    pub fn increment(&self, i: usize) -> Option<Letter> {
        assert!(i >= 1);
        match &self.incs {
            Increments::Finite(d) | Increments::Truncated { incs: d, .. } => d.get(i - 1).copied(),
            Increments::Periodic(w) => Some(w.letter(i - 1)),
        }
    }

    /// Known increments, at most `n` of them.
    pub fn increments_prefix(&self, n: usize) -> Vec<Letter> {
        (1..=n).map_while(|i| self.increment(i)).collect()
    }

    /// `s_i` when it exists and is known.
    pub fn element(&self, i: usize) -> Option<usize> {
        let mut s = self.d0;
        for j in 1..=i {
            s += self.increment(j)? as usize;
        }
        Some(s)
    }

    pub fn max(&self) -> Option<usize> {
        self.len().and_then(|n| self.element(n - 1))
    }

    /// Elements below `bound` (clamped to the horizon of truncated sets).
    pub fn elements_below(&self, bound: usize) -> Vec<usize> {
        let bound = self.horizon().map_or(bound, |h| bound.min(h));
        (0..)
            .map_while(|i| self.element(i))
            .take_while(|&s| s < bound)
            .collect()
    }

    /// Membership; `None` at or beyond the horizon of a truncated set.
    pub fn contains(&self, m: usize) -> Option<bool> {
        if self.horizon().is_some_and(|h| m >= h) {
            return None;
        }
        Some(self.elements_below(m + 1).last() == Some(&m))
    }

    /// The 0/1 indicator of `S` as an infinite word; `None` for truncated sets.
    pub fn indicator(&self) -> Option<EpWord> {
        match &self.incs {
            Increments::Finite(_) => {
                let max = self.max().unwrap();
                let mut w = vec![0; max + 1];
                for s in self.elements_below(max + 1) {
                    w[s] = 1;
                }
                Some(EpWord::from_finite(w, 0))
            }
            Increments::Periodic(inc) => {
                let k1 = inc.pre().len();
                let start = self.element(k1).unwrap();
                let g: usize = inc.period().iter().map(|&x| x as usize).sum();
                let mut pre = vec![0; start];
                for s in self.elements_below(start) {
                    pre[s] = 1;
                }
                let mut period = vec![0; g];
                for s in self.elements_below(start + g) {
                    if s >= start {
                        period[s - start] = 1;
                    }
                }
                Some(EpWord::new(pre, period))
            }
            Increments::Truncated { .. } => None,
        }
    }

    /// Shape parameters of `Δ(S)` for eventually periodic sets.
    pub fn delta_shape(&self) -> Option<DeltaShape> {
        let Increments::Periodic(w) = &self.incs else {
            return None;
        };
        let k = w.pre().len() + 1;
        Some(DeltaShape {
            k,
            l: w.period().len(),
            g: w.period().iter().map(|&x| x as usize).sum(),
            d_last: if k == 1 {
                self.d0
            } else {
                w.pre()[k - 2] as usize
            },
            g_last: *w.period().last().unwrap() as usize,
        })
    }
}

impl fmt::Display for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.incs {
            Increments::Finite(_) => write!(f, "{{{}}}", join(&self.elements_below(usize::MAX))),
            Increments::Periodic(w) => {
                let sep = if w.pre().is_empty() { "" } else { "," };
                write!(
                    f,
                    "{};{}{sep}({})*",
                    self.d0,
                    join(w.pre()),
                    join(w.period())
                )
            }
            Increments::Truncated { incs, horizon } => {
                let sep = if incs.is_empty() { "" } else { "," };
                write!(f, "trunc:{};{}{sep}...@{horizon}", self.d0, join(incs))
            }
        }
    }
}

impl FromStr for GapSet {
    type Err = Error;

    /// `{0,2,3}`, `0;1,(2)*`, `0;2,1` or `trunc:0;1,3,5,...@40`.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |position: usize, expected: &str| Error::Syntax {
            position,
            expected: expected.into(),
        };
        if let Some(inner) = s.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| syntax(s.len(), "'}'"))?;
            let w = parse_word(inner, 1)?;
            if w.period.is_some() {
                return Err(syntax(1, "a finite list"));
            }
            let values: Vec<usize> = w.pre.iter().map(|&v| v as usize).collect();
            return GapSet::from_list(&values);
        }
        let (body, offset, horizon) = match s.strip_prefix("trunc:") {
            Some(rest) => {
                let (listed, h) = parse_truncated(rest, 6)?;
                (listed, 6, Some(h))
            }
            None => (s, 0, None),
        };
        let (d0, incs) = body
            .split_once(';')
            .ok_or_else(|| syntax(offset + body.len(), "';'"))?;
        let d0 = d0
            .trim()
            .parse::<usize>()
            .map_err(|_| syntax(offset, "an integer d0"))?;
        let inc_offset = offset + body.find(';').unwrap() + 1;
        let w = if incs.trim().is_empty() {
            crate::seqcore::WordText {
                pre: Vec::new(),
                period: None,
            }
        } else {
            parse_word(incs, inc_offset)?
        };
        match (horizon, w.period) {
            (Some(h), None) => GapSet::truncated(d0, w.pre, h),
            (Some(_), Some(_)) => Err(syntax(inc_offset, "a finite increment list")),
            (None, Some(p)) => GapSet::periodic(d0, EpWord::new(w.pre, p)),
            (None, None) => GapSet::finite(d0, w.pre),
        }
    }
}

pub fn gapset_from_list(values: &[usize]) -> Result<GapSet> {
    GapSet::from_list(values)
}

/// SFT iff finite or cofinite, AFT iff `Δ(S)` eventually constant, sofic iff
/// eventually periodic. Truncated sets are reported non-sofic.
pub fn classify_gap(s: &GapSet) -> GapClass {
    match &s.incs {
        Increments::Finite(_) => GapClass::Sft,
        Increments::Periodic(w) if w.period() == [1] => GapClass::Sft,
        Increments::Periodic(w) if w.period().len() == 1 => GapClass::AftNotSft,
        Increments::Periodic(_) => GapClass::SoficNotAFT,
        Increments::Truncated { .. } => GapClass::NonSofic,
    }
}

/// Rewrites `{n, n+1, …}` (`n ≥ 1`) as the conjugate `{0, n}`.
pub fn normalize(s: &GapSet) -> GapSet {
    match &s.incs {
        Increments::Periodic(w) if w.pre().is_empty() && w.period() == [1] && s.d0 >= 1 => GapSet {
            d0: 0,
            incs: Increments::Finite(vec![s.d0 as Letter]),
        },
        _ => s.clone(),
    }
}

/// `D(S) = d_1 ⋯ d_{k-2} (d_{k-1} + s_0 + 1)` for finite `S`, `|S| = k ≥ 2`.
pub fn d_word(s: &GapSet) -> Result<Vec<Letter>> {
    let Increments::Finite(d) = &s.incs else {
        return Err(Error::NotFinite);
    };
    if d.is_empty() {
        return Err(Error::TooSmall);
    }
    let mut w = d.clone();
    *w.last_mut().unwrap() += s.d0 as Letter + 1;
    Ok(w)
}

/// `D(S)^∞` for finite `S`, the raw increments `d_1 d_2 ⋯` otherwise.
pub fn inverse_parry_word(s: &GapSet) -> Result<EpWord> {
    if s.d0 != 0 {
        return Err(Error::NonzeroS0);
    }
    match &s.incs {
        Increments::Finite(_) => Ok(EpWord::periodic(d_word(s)?)),
        Increments::Periodic(w) => Ok(w.clone()),
        Increments::Truncated { .. } => Err(Error::NotSofic),
    }
}

/// Checks `d_n d_{n+1} ⋯ ≥ d_1 d_2 ⋯` for all `n ≥ 1`.
pub fn star_condition(s: &GapSet) -> Result<StarVerdict> {
    if s.d0 != 0 {
        return Err(Error::NonzeroS0);
    }
    if let Increments::Truncated { incs, .. } = &s.incs {
        if incs.windows(2).all(|w| w[0] <= w[1]) {
            return Ok(StarVerdict::HoldsByMonotonicity);
        }
        for k in 1..incs.len() {
            let cmp = incs[k..]
                .iter()
                .zip(incs)
                .map(|(a, b)| a.cmp(b))
                .find(|o| o.is_ne());
            if cmp == Some(std::cmp::Ordering::Less) {
                return Ok(StarVerdict::FailsAt(k + 1));
            }
        }
        return Ok(StarVerdict::HoldsToHorizon(incs.len()));
    }
    let w = inverse_parry_word(s)?;
    for k in 1..w.orbit_len() {
        if lex_compare(&w.shift(k), &w).is_lt() {
            return Ok(StarVerdict::FailsAt(k + 1));
        }
    }
    Ok(StarVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GapSet {
        s.parse().unwrap()
    }

    #[test]
    fn from_list_examples() {
        let s = gapset_from_list(&[0, 2, 3]).unwrap();
        assert_eq!(
            (s.d0(), s.increments()),
            (0, &Increments::Finite(vec![2, 1]))
        );
        let s = gapset_from_list(&[0, 1]).unwrap();
        assert_eq!(s.increments(), &Increments::Finite(vec![1]));
        let s = g("2;(1)*");
        assert_eq!(
            (s.d0(), s.increments()),
            (2, &Increments::Periodic(EpWord::periodic(vec![1])))
        );
        assert_eq!(gapset_from_list(&[]), Err(Error::EmptySet));
        assert!(gapset_from_list(&[3, 3]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_gap(&g("{0,2,3}")), GapClass::Sft);
        assert_eq!(classify_gap(&g("0;(2)*")), GapClass::AftNotSft);
        assert_eq!(classify_gap(&g("0;(2,1)*")), GapClass::SoficNotAFT);
        assert_eq!(classify_gap(&g("3;(1)*")), GapClass::Sft);
        assert_eq!(classify_gap(&g("trunc:0;1,3,5@20")), GapClass::NonSofic);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&g("2;(1)*")), g("{0,2}"));
        assert_eq!(normalize(&g("{0,5}")), g("{0,5}"));
        assert_eq!(normalize(&g("{1,2}")), g("{1,2}"));
        assert_eq!(normalize(&g("0;(1)*")), g("0;(1)*"));
    }

    #[test]
    fn d_word_examples() {
        assert_eq!(d_word(&g("{0,2,3}")).unwrap(), vec![2, 2]);
        assert_eq!(d_word(&g("{0,2,4}")).unwrap(), vec![2, 3]);
        assert_eq!(d_word(&g("{0,1}")).unwrap(), vec![2]);
        assert_eq!(d_word(&g("{4}")), Err(Error::TooSmall));
        assert_eq!(d_word(&g("0;(2)*")), Err(Error::NotFinite));
    }

    #[test]
    fn inverse_parry_examples() {
        assert_eq!(
            inverse_parry_word(&g("{0,2,3}")).unwrap(),
            EpWord::periodic(vec![2, 2])
        );
        assert_eq!(
            inverse_parry_word(&g("0;1,(2)*")).unwrap(),
            EpWord::new(vec![1], vec![2])
        );
        assert_eq!(
            inverse_parry_word(&g("{0,1}")).unwrap(),
            EpWord::periodic(vec![2])
        );
        assert_eq!(inverse_parry_word(&g("{1,2}")), Err(Error::NonzeroS0));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_condition(&g("{0,2,3}")).unwrap(), StarVerdict::Holds);
        assert_eq!(
            star_condition(&g("{0,3,4}")).unwrap(),
            StarVerdict::FailsAt(2)
        );
        assert_eq!(
            star_condition(&g("0;(2,1)*")).unwrap(),
            StarVerdict::FailsAt(2)
        );
        assert_eq!(
            star_condition(&g("trunc:0;1,3,5,7,...@40")).unwrap(),
            StarVerdict::HoldsByMonotonicity
        );
        assert_eq!(
            star_condition(&g("trunc:0;2,1,3@10")).unwrap(),
            StarVerdict::FailsAt(2)
        );
        assert_eq!(
            star_condition(&g("trunc:0;1,2,1,3@10")).unwrap(),
            StarVerdict::HoldsToHorizon(4)
        );
        assert_eq!(star_condition(&g("{2,3}")), Err(Error::NonzeroS0));
    }

    #[test]
    fn text_round_trip() {
        for t in [
            "{0,2,3}",
            "0;1,(2)*",
            "0;(2,1)*",
            "trunc:0;1,3,5,...@20",
            "{7}",
        ] {
            assert_eq!(g(t).to_string(), t);
        }
        assert_eq!(g("0;2,1"), g("{0,2,3}"));
        assert!(matches!(
            "{0,x}".parse::<GapSet>(),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!("trunc:0;1,3,5@5".parse::<GapSet>().is_err());
    }

    #[test]
    fn indicator_round_trip() {
        for t in ["{0,2,3}", "0;1,(2)*", "0;(2,1)*", "3;2,(1,4)*"] {
            let s = g(t);
            assert_eq!(
                GapSet::from_indicator(&s.indicator().unwrap()).unwrap(),
                s,
                "{t}"
            );
        }
    }

    #[test]
    fn membership() {
        let s = g("0;1,(2)*");
        assert_eq!(s.elements_below(8), vec![0, 1, 3, 5, 7]);
        assert_eq!(s.contains(4), Some(false));
        let t = GapSet::truncated_from_fn(20, |m| m % 3 == 0).unwrap();
        assert_eq!(t.contains(18), Some(true));
        assert_eq!(t.contains(20), None);
    }

    #[test]
    fn delta_shape_case_parameters() {
        let shape = g("0;1,(2)*").delta_shape().unwrap();
        assert_eq!(
            shape,
            DeltaShape {
                k: 2,
                l: 1,
                g: 2,
                d_last: 1,
                g_last: 2
            }
        );
    }
}
