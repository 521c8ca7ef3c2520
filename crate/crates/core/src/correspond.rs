//! The correspondence `a_i = 1 ⟺ i − 1 ∈ S` between β-shifts and gap shifts,
//! the `S_j` family and equivalence levels between the two sides.

use serde::Serialize;

use crate::beta::{
    classify_beta, require_valid, validate_parry, BetaClass, ParrySeq, ParryVerdict,
};
use crate::covers::{fischer_beta, fischer_gap, graph_iso, min_factor};
use crate::error::{Error, Result};
use crate::gaps::{normalize, star_condition, GapSet, Increments, StarVerdict};
use crate::seqcore::least_period;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssRecord {
    pub parry: ParrySeq,
    pub gap: GapSet,
    /// `gap = {i − 1 : a_i = 1}` holds verbatim.
    pub exact: bool,
    pub note: Option<String>,
}

/// Ordered from strongest to weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum EquivalenceLevel {
    Conjugate,
    RRAlmostConjugate,
    RRFiniteEquivalent,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub level: EquivalenceLevel,
    /// Vertex bijection witnessing the level: between the Fischer covers for
    /// the two strongest levels, between the `M_G` quotients otherwise.
    pub certificate: Option<Vec<usize>>,
    pub note: Option<String>,
}

/// `S = {i − 1 : a_i = 1}`, keeping the kind of `s`, then normalized.
pub fn ass_of_beta(s: &ParrySeq) -> Result<GapSet> {
    require_valid(s)?;
    let gap = match s {
        ParrySeq::Finite(d) => {
            let values: Vec<usize> = (0..d.len()).filter(|&i| d[i] == 1).collect();
            GapSet::from_list(&values)?
        }
        ParrySeq::Periodic(w) => GapSet::from_indicator(w)?,
        ParrySeq::Truncated { prefix } => {
            GapSet::truncated_from_fn(prefix.len(), |m| prefix[m] == 1)?
        }
    };
    Ok(normalize(&gap))
}

/// The β-shift attached to `S` when `S` satisfies the star condition.
pub fn ass_of_gap(s: &GapSet) -> Result<AssRecord> {
    let s = normalize(s);
    if s.d0() != 0 {
        return Err(Error::NonzeroS0);
    }
    if s.len().is_some_and(|n| n < 2) {
        return Err(Error::TooSmall);
    }
    if let StarVerdict::FailsAt(n) = star_condition(&s)? {
        return Err(Error::StarFails(n));
    }
    let candidate = match s.increments() {
        Increments::Finite(_) => {
            let max = s.max().unwrap();
            ParrySeq::finite(
                (0..=max)
                    .map(|m| u32::from(s.contains(m) == Some(true)))
                    .collect(),
            )?
        }
        Increments::Periodic(_) => ParrySeq::periodic(s.indicator().unwrap())?,
        Increments::Truncated { horizon, .. } => {
            ParrySeq::truncated_from_fn(*horizon, |i| s.contains(i - 1) == Some(true))?
        }
    };
    match validate_parry(&candidate) {
        v if v.is_valid() => Ok(AssRecord {
            parry: candidate,
            gap: s,
            exact: true,
            note: None,
        }),
        ParryVerdict::QuasiGreedyOf(finite) => {
            let parry = ParrySeq::finite(finite)?;
            require_valid(&parry)?;
            let note = format!(
                "candidate {candidate} is the quasi-greedy expansion of {parry}; the gap shift is not its exact image"
            );
            Ok(AssRecord {
                parry,
                gap: s,
                exact: false,
                note: Some(note),
            })
        }
        v => reduce_non_primitive(&s, &candidate, v),
    }
}

/// For finite `S` with `D(S) = u^m`, `m ≥ 2`, passes to
/// `S′ = {0, s_1, …, s_{q−2}, s_{q−1} − 1}` with `q − 1 = |u|`.
fn reduce_non_primitive(
    s: &GapSet,
    candidate: &ParrySeq,
    verdict: ParryVerdict,
) -> Result<AssRecord> {
    let fail = || Error::Invalid(format!("candidate {candidate} fails: {verdict}"));
    let Increments::Finite(_) = s.increments() else {
        return Err(fail());
    };
    let d = crate::gaps::d_word(s)?;
    let root = least_period(&d);
    if root == d.len() {
        return Err(fail());
    }
    let mut values: Vec<usize> = (0..root).map(|i| s.element(i).unwrap()).collect();
    values.push(s.element(root).unwrap() - 1);
    let reduced = GapSet::from_list(&values)?;
    let inner = ass_of_gap(&reduced)?;
    if !inner.exact {
        return Err(fail());
    }
    let note = format!("D(S) is not primitive; reduced to S' = {reduced}");
    Ok(AssRecord {
        parry: inner.parry,
        gap: s.clone(),
        exact: false,
        note: Some(note),
    })
}

pub fn equivalence_level(s: &ParrySeq, gap: &GapSet) -> Result<Equivalence> {
    if !s.is_sofic() || !gap.is_sofic() {
        return Err(Error::NotSofic);
    }
    require_valid(s)?;
    let gap = normalize(gap);
    let beta_graph = fischer_beta(s, None)?;
    let gap_graph = fischer_gap(&gap, None)?.graph;
    let image = ass_of_beta(s)? == gap;
    let cover_iso = graph_iso(&beta_graph.underlying(), &gap_graph.underlying())?;
    if image && classify_beta(s) == BetaClass::Sft {
        return Ok(Equivalence {
            level: EquivalenceLevel::Conjugate,
            certificate: cover_iso,
            note: None,
        });
    }
    if cover_iso.is_some() {
        let note = image
            .then(|| "strictly sofic beta-shifts are not conjugate to any gap shift".to_string());
        return Ok(Equivalence {
            level: EquivalenceLevel::RRAlmostConjugate,
            certificate: cover_iso,
            note,
        });
    }
    let (fb, fg) = (min_factor(&beta_graph), min_factor(&gap_graph));
    if let Some(map) = graph_iso(&fb.quotient, &fg.quotient)? {
        return Ok(Equivalence {
            level: EquivalenceLevel::RRFiniteEquivalent,
            certificate: Some(map),
            note: Some("equal minimal factors; almost conjugacy is not certified".into()),
        });
    }
    Ok(Equivalence {
        level: EquivalenceLevel::None,
        certificate: None,
        note: None,
    })
}

/// `S_j = (S_{j−1} ∖ {max S_{j−1}}) ∪ ((max S_{j−1} + 1) + S_0)`, `S_0` the
/// image of a finite expansion.
pub fn family_sj(s0: &GapSet, j: usize) -> Result<GapSet> {
    let rec = match ass_of_gap(s0) {
        Ok(rec) => rec,
        Err(_) => return Err(Error::NotAssImage),
    };
    if !rec.exact || !matches!(rec.parry, ParrySeq::Finite(_)) || normalize(s0) != *s0 {
        return Err(Error::NotAssImage);
    }
    let base = s0.elements_below(usize::MAX);
    let mut current = base.clone();
    for _ in 0..j {
        let top = current.pop().unwrap();
        current.extend(base.iter().map(|&h| top + 1 + h));
    }
    GapSet::from_list(&current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaps::d_word;

    fn gap(s: &str) -> GapSet {
        s.parse().unwrap()
    }

    fn parry(s: &str) -> ParrySeq {
        s.parse().unwrap()
    }

    #[test]
    fn beta_to_gap() {
        assert_eq!(ass_of_beta(&parry("1,1")).unwrap(), gap("{0,1}"));
        assert_eq!(ass_of_beta(&parry("1(1,0)*")).unwrap(), gap("0;1,(2)*"));
        assert_eq!(ass_of_beta(&parry("1,0,0,1")).unwrap(), gap("{0,3}"));
        assert!(matches!(
            ass_of_beta(&parry("1,0,1,1")),
            Err(Error::NotValidated(_))
        ));
    }

    #[test]
    fn gap_to_beta() {
        let r = ass_of_gap(&gap("{0,1}")).unwrap();
        assert_eq!((r.parry, r.exact), (parry("1,1"), true));
        let r = ass_of_gap(&gap("0;1,(2)*")).unwrap();
        assert_eq!((r.parry, r.exact), (parry("1(1,0)*"), true));
        let r = ass_of_gap(&gap("{0,2,3}")).unwrap();
        assert_eq!((r.parry, r.exact), (parry("1,1"), false));
        assert!(r.note.unwrap().contains("{0,1}"));
    }

    #[test]
    fn gap_to_beta_errors() {
        assert_eq!(ass_of_gap(&gap("0;(2,1)*")), Err(Error::StarFails(2)));
        assert_eq!(ass_of_gap(&gap("{1,2}")), Err(Error::NonzeroS0));
        assert_eq!(ass_of_gap(&gap("{0}")), Err(Error::TooSmall));
    }

    #[test]
    fn purely_periodic_candidate() {
        let r = ass_of_gap(&gap("0;(2)*")).unwrap();
        assert!(!r.exact);
        assert_eq!(r.parry, parry("1,1"));
    }

    #[test]
    fn levels() {
        let e = equivalence_level(&parry("1,1"), &gap("{0,1}")).unwrap();
        assert_eq!(e.level, EquivalenceLevel::Conjugate);
        let e = equivalence_level(&parry("1(1,0)*"), &gap("0;1,(2)*")).unwrap();
        assert_eq!(e.level, EquivalenceLevel::RRAlmostConjugate);
        let e = equivalence_level(&parry("1,1"), &gap("{0,2,3}")).unwrap();
        assert_eq!(e.level, EquivalenceLevel::RRFiniteEquivalent);
        let e = equivalence_level(&parry("1,1"), &gap("{0,3}")).unwrap();
        assert_eq!(e.level, EquivalenceLevel::None);
        assert_eq!(
            equivalence_level(&ParrySeq::full_shift(), &gap("0;(1)*"))
                .unwrap()
                .level,
            EquivalenceLevel::Conjugate
        );
        assert_eq!(
            equivalence_level(&parry("trunc:1,1@4"), &gap("{0,1}")),
            Err(Error::NotSofic)
        );
    }

    #[test]
    fn family() {
        let s0 = gap("{0,1}");
        assert_eq!(family_sj(&s0, 0).unwrap(), s0);
        assert_eq!(family_sj(&s0, 1).unwrap(), gap("{0,2,3}"));
        assert_eq!(family_sj(&s0, 2).unwrap(), gap("{0,2,4,5}"));
        assert_eq!(d_word(&family_sj(&s0, 2).unwrap()).unwrap(), vec![2, 2, 2]);
        assert_eq!(family_sj(&gap("{0,2,3}"), 1), Err(Error::NotAssImage));
        assert_eq!(family_sj(&gap("0;1,(2)*"), 1), Err(Error::NotAssImage));
    }
}
