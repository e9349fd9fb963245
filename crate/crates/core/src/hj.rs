//! Hirzebruch–Jung continued fractions and blow-downs of chains of rational
//! curves lying over a single fibre.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HjError {
    #[error("gcd({a}, {k}) != 1")]
    NotCoprime { k: u64, a: u64 },
    #[error("need 1 <= a < k, got a = {a}, k = {k}")]
    OutOfRange { k: u64, a: u64 },
    #[error("no (-1)-curve can be contracted in {0}")]
    NonTerminating(String),
    #[error("central self-intersection not unique for k = {k}, a = {a}: {found:?}")]
    AmbiguousCentre { k: u64, a: u64, found: Vec<i64> },
    #[error("bad chain syntax: {0}")]
    Parse(String),
}

/// k/a = s_1 - 1/(s_2 - 1/(...)) with every s_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJFraction {
    pub k: u64,
    pub a: u64,
    pub digits: Vec<i64>,
}

pub fn hj_expand(k: u64, a: u64) -> Result<HJFraction, HjError> {
    if a == 0 || a >= k {
        return Err(HjError::OutOfRange { k, a });
    }
    if k.gcd(&a) != 1 {
        return Err(HjError::NotCoprime { k, a });
    }
    let (mut num, mut den) = (k as i64, a as i64);
    let mut digits = Vec::new();
    while den != 0 {
        // ceiling division
        let s = (num + den - 1) / den;
        digits.push(s);
        let r = s * den - num;
        num = den;
        den = r;
    }
    Ok(HJFraction { k, a, digits })
}

pub fn hj_eval(digits: &[i64]) -> Q {
    let mut acc: Option<Q> = None;
    for &s in digits.iter().rev() {
        acc = Some(match acc {
            None => q(s),
            Some(x) => q(s) - x.recip(),
        });
    }
    acc.unwrap_or_else(Q::zero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainOrigin {
    SmoothQuotient,
    SingularQuotient,
    Custom,
}

/// Self-intersections of a chain of rational curves over one point of the
/// base; `galois_swap` says the ends are exchanged by Galois.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreChain {
    pub selfints: Vec<i64>,
    pub galois_swap: bool,
    pub origin: ChainOrigin,
}

impl FibreChain {
    pub fn custom(selfints: Vec<i64>, galois_swap: bool) -> Self {
        FibreChain {
            selfints,
            galois_swap,
            origin: ChainOrigin::Custom,
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.selfints.iter().eq(self.selfints.iter().rev())
    }
}

impl fmt::Display for FibreChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.selfints.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))?;
        if self.galois_swap {
            write!(f, ";swap")?;
        }
        Ok(())
    }
}

impl FromStr for FibreChain {
    type Err = HjError;

    /// `-3,-1,-3;swap` or `-2,-1,-2`.
    fn from_str(s: &str) -> Result<Self, HjError> {
        let bad = || HjError::Parse(s.to_string());
        let (body, flag) = match s.trim().split_once(';') {
            Some((b, f)) => (b, Some(f.trim())),
            None => (s.trim(), None),
        };
        let swap = match flag {
            None | Some("") => false,
            Some("swap") => true,
            Some(_) => return Err(bad()),
        };
        let selfints: Vec<i64> = body
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if selfints.is_empty() {
            return Err(bad());
        }
        if swap && !selfints.iter().eq(selfints.iter().rev()) {
            return Err(HjError::Parse(format!("{s}: swap needs a palindrome")));
        }
        Ok(FibreChain::custom(selfints, swap))
    }
}

/// The chain over a fibre with odd stabilizer 2a+1 whose two components are
/// exchanged: (-3, -2^{a-1}), -1, -(2a+1), -1, mirrored.
pub fn singular_fibre_chain(a: u64) -> FibreChain {
    assert!(a >= 1);
    let mut left = vec![-3];
    left.extend(std::iter::repeat(-2).take(a as usize - 1));
    let mut ch = left.clone();
    ch.push(-1);
    ch.push(-(2 * a as i64 + 1));
    ch.push(-1);
    ch.extend(left.iter().rev());
    FibreChain {
        selfints: ch,
        galois_swap: true,
        origin: ChainOrigin::SingularQuotient,
    }
}

/// Resolution of the image of a smooth fibre with stabilizer C_k acting
/// with weight a: the two HJ strings around the proper transform.
pub fn smooth_fibre_chain(k: u64, a: u64) -> Result<FibreChain, HjError> {
    let left = hj_expand(k, a)?;
    let right = hj_expand(k, k - a)?;
    let build = |c: i64| {
        let mut v: Vec<i64> = left.digits.iter().rev().map(|s| -s).collect();
        v.push(c);
        v.extend(right.digits.iter().map(|s| -s));
        v
    };
    let found: Vec<i64> = (1..=25)
        .map(|x| -x)
        .filter(|&c| {
            matches!(
                contract_chain(&FibreChain::custom(build(c), false)),
                Ok(Contraction { fate: FibreFate::Smooth, .. })
            )
        })
        .collect();
    if found.len() != 1 {
        return Err(HjError::AmbiguousCentre { k, a, found });
    }
    let selfints = build(found[0]);
    let galois_swap = 2 * a == k;
    Ok(FibreChain {
        selfints,
        galois_swap,
        origin: ChainOrigin::SmoothQuotient,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibreFate {
    Smooth,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub fate: FibreFate,
    pub trace: Vec<Vec<i64>>,
}

/// A Galois-stable set of disjoint (-1)-curves, by index.
pub type Move = Vec<usize>;

fn available_moves(ch: &[i64], swap: bool) -> Vec<Move> {
    let len = ch.len();
    let minus_one: Vec<usize> = (0..len).filter(|&i| ch[i] == -1).collect();
    if !swap {
        return minus_one.into_iter().map(|i| vec![i]).collect();
    }
    let mut moves = Vec::new();
    for &i in &minus_one {
        let j = len - 1 - i;
        if i < j && i + 1 < j {
            moves.push(vec![i, j]);
        }
    }
    if len % 2 == 1 && ch[len / 2] == -1 {
        moves.push(vec![len / 2]);
    }
    moves
}

fn apply_move(ch: &[i64], mv: &[usize]) -> Vec<i64> {
    let mut v = ch.to_vec();
    for &i in mv {
        if i > 0 {
            v[i - 1] += 1;
        }
        if i + 1 < v.len() {
            v[i + 1] += 1;
        }
    }
    v.into_iter()
        .enumerate()
        .filter(|(i, _)| !mv.contains(i))
        .map(|(_, x)| x)
        .collect()
}

fn terminal(ch: &[i64], swap: bool) -> Option<FibreFate> {
    match ch {
        [0] => Some(FibreFate::Smooth),
        [-1, -1] if swap => Some(FibreFate::Singular),
        _ => None,
    }
}

/// Contracts (-1)-curves, leftmost first, until the fibre is relatively
/// minimal.
pub fn contract_chain(ch: &FibreChain) -> Result<Contraction, HjError> {
    contract_chain_with(ch, |_| 0)
}

/// As [`contract_chain`], with `pick` choosing among the available moves.
pub fn contract_chain_with(
    ch: &FibreChain,
    mut pick: impl FnMut(&[Move]) -> usize,
) -> Result<Contraction, HjError> {
    let swap = ch.galois_swap;
    let mut cur = ch.selfints.clone();
    let mut trace = vec![cur.clone()];
    loop {
        if let Some(fate) = terminal(&cur, swap) {
            return Ok(Contraction { fate, trace });
        }
        let moves = available_moves(&cur, swap);
        if moves.is_empty() || cur.len() == 1 {
            return Err(HjError::NonTerminating(
                FibreChain::custom(cur, swap).to_string(),
            ));
        }
        let idx = pick(&moves).min(moves.len() - 1);
        cur = apply_move(&cur, &moves[idx]);
        trace.push(cur.clone());
    }
}

/// Fate of the image of a smooth fibre with stabilizer C_k acting with weight
/// a (as ζ_k^a), `swap` telling whether the ends of the image chain are
/// exchanged. A weight sharing a factor d with k means the subgroup C_d fixes
/// the fibre pointwise; the image of the fibre is then that of C_{k/d}.
pub fn smooth_fibre_fate(k: u64, a: u64, swap: bool) -> Result<FibreFate, HjError> {
    let a = a % k.max(1);
    if k <= 1 || a == 0 {
        return Ok(FibreFate::Smooth);
    }
    let d = k.gcd(&a);
    let (k, a) = (k / d, a / d);
    if k == 1 {
        return Ok(FibreFate::Smooth);
    }
    let mut ch = smooth_fibre_chain(k, a)?;
    ch.galois_swap = swap && ch.is_palindrome();
    Ok(contract_chain(&ch)?.fate)
}

/// k/a as an exact rational, for the HJ inverse check.
pub fn ratio(k: u64, a: u64) -> Q {
    Q::new((k as i64).into(), (a as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(5, 2).unwrap().digits, vec![3, 2]);
        assert_eq!(hj_expand(2, 1).unwrap().digits, vec![2]);
        assert_eq!(hj_expand(5, 3).unwrap().digits, vec![2, 3]);
        assert!(matches!(hj_expand(4, 2), Err(HjError::NotCoprime { .. })));
        assert!(matches!(hj_expand(3, 3), Err(HjError::OutOfRange { .. })));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[3, 2]), ratio(5, 2));
        assert_eq!(hj_eval(&[7]), q(7));
        assert_eq!(hj_eval(&[3, 2, 2]), ratio(7, 3));
    }

    #[test]
    fn singular_chains() {
        assert_eq!(singular_fibre_chain(1).selfints, vec![-3, -1, -3, -1, -3]);
        assert_eq!(
            singular_fibre_chain(2).selfints,
            vec![-3, -2, -1, -5, -1, -2, -3]
        );
    }

    #[test]
    fn contraction_traces() {
        let ch: FibreChain = "-3,-1,-3,-1,-3;swap".parse().unwrap();
        let c = contract_chain(&ch).unwrap();
        assert_eq!(c.fate, FibreFate::Singular);
        assert_eq!(
            c.trace,
            vec![vec![-3, -1, -3, -1, -3], vec![-2, -1, -2], vec![-1, -1]]
        );
        let plain: FibreChain = "-2,-1,-2".parse().unwrap();
        assert_eq!(contract_chain(&plain).unwrap().fate, FibreFate::Smooth);
        let zero: FibreChain = "0".parse().unwrap();
        assert_eq!(contract_chain(&zero).unwrap().fate, FibreFate::Smooth);
        let stuck: FibreChain = "-2,-2".parse().unwrap();
        assert!(matches!(contract_chain(&stuck), Err(HjError::NonTerminating(_))));
    }

    #[test]
    fn smooth_chain_examples() {
        let c = smooth_fibre_chain(2, 1).unwrap();
        assert_eq!(c.selfints, vec![-2, -1, -2]);
        assert!(c.galois_swap);
        let c = smooth_fibre_chain(3, 1).unwrap();
        assert_eq!(c.selfints, vec![-3, -1, -2, -2]);
        assert!(!c.galois_swap);
    }

    #[test]
    fn chain_text_roundtrip() {
        for s in ["-3,-1,-3;swap", "-2,-1,-2", "0"] {
            assert_eq!(s.parse::<FibreChain>().unwrap().to_string(), s);
        }
        assert!("-3,-1;swap".parse::<FibreChain>().is_err());
        assert!("a,b".parse::<FibreChain>().is_err());
    }
}
