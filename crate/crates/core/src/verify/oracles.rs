//! Reference computations that avoid the library's fast paths: `π` by
//! explicit word enumeration, products by expanding the monomial rule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::maps::TwistMap;
use crate::poly::{Shape, SkewPoly};
use crate::rings::RingElement;

/// All words with `i` letters σ and `m − i` letters δ, as `true` for σ.
pub fn words(i: u32, m: u32) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    if i > m {
        return out;
    }
    for mask in 0u32..(1 << m) {
        if mask.count_ones() == i {
            out.push((0..m).map(|b| mask >> (m - 1 - b) & 1 == 1).collect());
        }
    }
    out
}

/// Applies a word, rightmost letter first.
pub fn apply_word(
    word: &[bool],
    sigma: &TwistMap,
    delta: &TwistMap,
    s: &RingElement,
) -> Result<RingElement> {
    let mut x = s.clone();
    for &letter in word.iter().rev() {
        x = if letter { sigma.apply(&x)? } else { delta.apply(&x)? };
    }
    Ok(x)
}

/// `π_i^m(s)` as the sum over all words.
pub fn pi_by_words(
    i: u32,
    m: u32,
    sigma: &TwistMap,
    delta: &TwistMap,
    s: &RingElement,
) -> Result<RingElement> {
    let mut acc = s.ring().zero();
    for w in words(i, m) {
        acc = acc.add(&apply_word(&w, sigma, delta, s)?)?;
    }
    Ok(acc)
}

/// `σ^m(s)` by stepping the forward or inverse map one application at a
/// time.
pub fn sigma_power(sigma: &TwistMap, m: i64, s: &RingElement) -> Result<RingElement> {
    let mut x = s.clone();
    for _ in 0..m.unsigned_abs() {
        x = if m > 0 {
            sigma.forward().apply(&x)?
        } else {
            sigma.inverse_map().ok_or(Error::InverseUnavailable)?.apply(&x)?
        };
    }
    Ok(x)
}

/// `p q` by the monomial rule, term by term.
pub fn product(p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly> {
    let cfg = p.config();
    let sigma = cfg.sigma();
    let mut acc: BTreeMap<i64, RingElement> = BTreeMap::new();
    let mut push = |e: i64, c: RingElement| -> Result<()> {
        let next = match acc.get(&e) {
            Some(v) => v.add(&c)?,
            None => c,
        };
        acc.insert(e, next);
        Ok(())
    };
    for (&m, r) in p.terms() {
        for (&n, s) in q.terms() {
            match (cfg.shape(), cfg.delta()) {
                (Shape::Ore, Some(delta)) => {
                    for i in 0..=m as u32 {
                        let pi = pi_by_words(i, m as u32, sigma, delta, s)?;
                        push(i as i64 + n, r.mul(&pi)?)?;
                    }
                }
                _ => push(m + n, r.mul(&sigma_power(sigma, m, s)?)?)?,
            }
        }
    }
    Ok(SkewPoly::from_terms(cfg, acc))
}

/// Rewrites `X^e` modulo `X^k = −1`, one step of `k` at a time.
pub fn substitute_power(p: &SkewPoly, k: i64) -> Result<SkewPoly> {
    let cfg = p.config();
    let mut acc = SkewPoly::zero(cfg);
    for (&e, c) in p.terms() {
        let (mut e, mut c) = (e, c.clone());
        while e >= k {
            e -= k;
            c = c.neg();
        }
        while e < 0 {
            e += k;
            c = c.neg();
        }
        acc = acc.add(&SkewPoly::monomial(cfg, c, e))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(words(1, 3).len(), 3);
        assert_eq!(words(0, 4), vec![vec![false; 4]]);
        assert!(words(4, 3).is_empty());
        assert_eq!(words(3, 6).len(), 20);
    }
}
