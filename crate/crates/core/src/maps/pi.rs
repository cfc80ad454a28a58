//! The operator family `π_i^m`: the sum of all compositions of `i` copies
//! of `σ` and `m − i` copies of `δ`.

use crate::error::{Error, Result};
use crate::rings::RingElement;

use super::{MapTag, TwistMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiFamily {
    sigma: TwistMap,
    delta: Option<TwistMap>,
}

impl PiFamily {
    /// `σ` must respect one and be bijective, `δ` must kill one.
    pub fn new(sigma: TwistMap, delta: Option<TwistMap>) -> Result<PiFamily> {
        if !sigma.has(MapTag::RespectsOne) {
            return Err(Error::DoesNotRespectOne);
        }
        if !sigma.has(MapTag::Bijective) {
            return Err(Error::NotBijective(sigma.label().to_string()));
        }
        if let Some(d) = &delta {
            if !d.has(MapTag::KillsOne) {
                return Err(Error::DoesNotKillOne);
            }
            if d.ring() != sigma.ring() {
                return Err(Error::IncompatibleRings(format!("{} vs {}", d.ring(), sigma.ring())));
            }
        }
        Ok(PiFamily { sigma, delta })
    }

    pub fn sigma(&self) -> &TwistMap {
        &self.sigma
    }

    pub fn delta(&self) -> Option<&TwistMap> {
        self.delta.as_ref()
    }

    /// `[π_0^m(s), …, π_m^m(s)]`.
    pub fn pi_row(&self, m: u32, s: &RingElement) -> Result<Vec<RingElement>> {
        let zero = s.ring().zero();
        let Some(delta) = &self.delta else {
            let mut row = vec![zero; m as usize + 1];
            row[m as usize] = self.sigma.apply_power(i64::from(m), s)?;
            return Ok(row);
        };
        let mut row = vec![s.clone()];
        for _ in 0..m {
            row = self.next_row(delta, &row)?;
        }
        Ok(row)
    }

    /// Row `m + 1` of the recursion from row `m`.
    pub(crate) fn next_row(
        &self,
        delta: &TwistMap,
        row: &[RingElement],
    ) -> Result<Vec<RingElement>> {
        let zero = row[0].ring().zero();
        let mut next = Vec::with_capacity(row.len() + 1);
        for i in 0..=row.len() {
            let mut acc = zero.clone();
            if i > 0 && !row[i - 1].is_zero() {
                acc = self.sigma.apply(&row[i - 1])?;
            }
            if i < row.len() && !row[i].is_zero() {
                acc = acc.add(&delta.apply(&row[i])?)?;
            }
            next.push(acc);
        }
        Ok(next)
    }

    /// `π_i^m(s)`; zero when `i > m`.
    pub fn pi_apply(&self, i: u32, m: u32, s: &RingElement) -> Result<RingElement> {
        if i > m {
            return Ok(s.ring().zero());
        }
        Ok(self.pi_row(m, s)?.swap_remove(i as usize))
    }
}

/// The words summed by `π_i^m`, outermost letter first, `σ` before `δ`.
pub fn pi_words(i: u32, m: u32) -> Vec<String> {
    if i > m {
        return Vec::new();
    }
    if m == 0 {
        return vec!["id".to_string()];
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(m as usize);
    fill_words(i, m - i, &mut word, &mut out);
    out
}

fn fill_words(sigmas: u32, deltas: u32, word: &mut Vec<&'static str>, out: &mut Vec<String>) {
    if sigmas == 0 && deltas == 0 {
        out.push(word.join("∘"));
        return;
    }
    if sigmas > 0 {
        word.push("σ");
        fill_words(sigmas - 1, deltas, word, out);
        word.pop();
    }
    if deltas > 0 {
        word.push("δ");
        fill_words(sigmas, deltas - 1, word, out);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_delta, make_twist, TwistDescriptor};
    use crate::poly::{RingConfig, Shape};
    use crate::rational::Rational;
    use crate::rings::{gaussian_rationals, rationals, Ring};

    #[test]
    fn words_of_pi_1_3() {
        assert_eq!(pi_words(1, 3), vec!["σ∘δ∘δ", "δ∘σ∘δ", "δ∘δ∘σ"]);
        assert_eq!(pi_words(0, 0), vec!["id"]);
        assert!(pi_words(3, 2).is_empty());
        assert_eq!(pi_words(2, 4).len(), 6);
    }

    #[test]
    fn without_delta_only_sigma_word_survives() {
        let c = Ring::algebra(gaussian_rationals());
        let sigma = make_twist(&c, &TwistDescriptor::QTwist { q: Rational::from_integer(2) }).unwrap();
        let fam = PiFamily::new(sigma.clone(), None).unwrap();
        let s = c.from_ints(&[1, 1]).unwrap();
        assert_eq!(fam.pi_apply(3, 3, &s).unwrap(), sigma.apply_power(3, &s).unwrap());
        assert!(fam.pi_apply(1, 3, &s).unwrap().is_zero());
        assert!(fam.pi_apply(4, 3, &s).unwrap().is_zero());
    }

    #[test]
    fn derivative_example() {
        let q = Ring::algebra(rationals());
        let inner = RingConfig::new(q.clone(), TwistMap::identity(&q), None, "Y", Shape::Ore).unwrap();
        let qy = Ring::Poly(inner.clone());
        let sigma = TwistMap::identity(&qy);
        let delta = make_delta(&qy, &TwistDescriptor::Derivative).unwrap();
        let fam = PiFamily::new(sigma, Some(delta)).unwrap();
        let y2 = RingElement::Poly(crate::poly::SkewPoly::monomial(&inner, q.one(), 2));
        let four_y = RingElement::Poly(crate::poly::SkewPoly::monomial(
            &inner,
            q.scalar(Rational::from_integer(4)),
            1,
        ));
        assert_eq!(fam.pi_apply(1, 2, &y2).unwrap(), four_y);
    }
}
