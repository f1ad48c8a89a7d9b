//! Exact generation of the recurrence families `a_n = a_{n-p} + a_{n-q}`.
//!
//! Terms are exact rationals so that the `a`-parametrized Gibonacci family
//! fits the same machinery; the named integer presets always produce
//! denominator 1 and expose a [`Natural`] view.  Negative indices are
//! resolved by the exact backward rearrangement `a_{n-q} = a_n - a_{n-p}`,
//! the unique extension consistent with the recurrence (it reproduces
//! `G_{-1} = 0`).
//!
//! Indexing follows the shifted convention `F_0 = F_1 = 1`, one step off
//! from the common `F_1 = F_2 = 1` numbering (so this `F_n` is OEIS
//! A000045's `F(n+1)`).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::VecDeque;

use crate::{Error, Result};

/// Arbitrary-precision nonnegative integer sequence value.
pub type Natural = BigUint;

/// Exact rational sequence term, always in lowest terms.
pub type Term = BigRational;

/// The two families whose interplay is analyzed throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Undelayed: F_n = F_{n-1} + F_{n-2}, F_0 = F_1 = 1.
    F,
    /// One-step delayed ("Gibonacci"): G_n = G_{n-2} + G_{n-3}, G_0 = G_1 = G_2 = 1.
    G,
}

impl Family {
    pub fn spec(&self) -> RecurrenceSpec {
        match self {
            Family::F => RecurrenceSpec::fibonacci(),
            Family::G => RecurrenceSpec::gibonacci(),
        }
    }

    /// Major-index modulus of the 7j+k / 12J+K reindexing.
    pub fn modulus(&self) -> u64 {
        match self {
            Family::F => 7,
            Family::G => 12,
        }
    }
}

/// Offsets and initial values defining `a_n = a_{n-p} + a_{n-q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    p: usize,
    q: usize,
    initial: Vec<Term>,
}

fn ones(n: usize) -> Vec<Term> {
    vec![Term::one(); n]
}

impl RecurrenceSpec {
    pub fn new(p: usize, q: usize, initial: Vec<Term>) -> Result<Self> {
        if p < 1 || q <= p {
            return Err(Error::InvalidSpec(format!("offsets must satisfy 1 <= p < q, got p={p}, q={q}")));
        }
        if initial.len() != q {
            return Err(Error::InvalidSpec(format!(
                "need exactly q={q} initial values, got {}",
                initial.len()
            )));
        }
        Ok(RecurrenceSpec { p, q, initial })
    }

    /// F_n = F_{n-1} + F_{n-2} with F_0 = F_1 = 1.
    pub fn fibonacci() -> Self {
        RecurrenceSpec { p: 1, q: 2, initial: ones(2) }
    }

    /// G_n = G_{n-2} + G_{n-3} with G_0 = G_1 = G_2 = 1.
    pub fn gibonacci() -> Self {
        RecurrenceSpec { p: 2, q: 3, initial: ones(3) }
    }

    /// G(a): same recurrence as G but G_1 = a.
    pub fn gibonacci_with(a: Term) -> Self {
        RecurrenceSpec { p: 2, q: 3, initial: vec![Term::one(), a, Term::one()] }
    }

    /// Higher family F^(l): F_n = F_{n-1} + F_{n-l-1}, initial l+1 ones.
    pub fn higher(ell: usize) -> Result<Self> {
        if ell < 1 {
            return Err(Error::InvalidSpec(format!("higher family needs ell >= 1, got {ell}")));
        }
        Ok(RecurrenceSpec { p: 1, q: ell + 1, initial: ones(ell + 1) })
    }

    /// Doubly delayed family H_n = H_{n-3} + H_{n-4}.
    ///
    /// No canonical initial values exist for H; the default follows the
    /// all-ones rule of the higher families and can be overridden.
    pub fn double_delayed() -> Self {
        RecurrenceSpec { p: 3, q: 4, initial: ones(4) }
    }

    pub fn with_initial(self, initial: Vec<Term>) -> Result<Self> {
        Self::new(self.p, self.q, initial)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn initial(&self) -> &[Term] {
        &self.initial
    }

    /// Exact term at any integer index.
    pub fn term(&self, n: i64) -> Term {
        if n >= 0 && (n as usize) < self.q {
            return self.initial[n as usize].clone();
        }
        if n >= 0 {
            self.forward_from_initial()
                .nth(n as usize - self.q)
                .expect("forward stream is infinite")
        } else {
            self.backward_from_initial()
                .nth((-n) as usize - 1)
                .expect("backward stream is infinite")
        }
    }

    /// Exact terms for the inclusive index range, one rolling pass.
    pub fn stream(&self, from: i64, to: i64) -> Result<Vec<Term>> {
        if from > to {
            return Err(Error::EmptyRange { from, to });
        }
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        // backward part, collected in reverse
        if from < 0 {
            let hi = to.min(-1);
            let take = (hi - from + 1) as usize;
            let skip = (-hi) as usize - 1;
            let mut back: Vec<Term> =
                self.backward_from_initial().skip(skip).take(take).collect();
            back.reverse();
            out.extend(back);
        }
        if to >= 0 {
            let lo = from.max(0) as usize;
            for (i, v) in self.full_forward().enumerate().skip(lo) {
                if i > to as usize {
                    break;
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Infinite iterator over terms at n = 0, 1, 2, ...
    pub fn full_forward(&self) -> impl Iterator<Item = Term> + '_ {
        self.initial.iter().cloned().chain(self.forward_from_initial())
    }

    // terms at n = q, q+1, ... with O(q) rolling state
    fn forward_from_initial(&self) -> impl Iterator<Item = Term> + '_ {
        let window: VecDeque<Term> = self.initial.iter().cloned().collect();
        let (p, q) = (self.p, self.q);
        std::iter::successors(Some((window, Term::zero())), move |(w, _)| {
            let mut w = w.clone();
            let next = &w[0] + &w[q - p];
            w.pop_front();
            w.push_back(next.clone());
            Some((w, next))
        })
        .skip(1)
        .map(|(_, v)| v)
    }

    // terms at n = -1, -2, ... via a_m = a_{m+q} - a_{m+q-p}
    fn backward_from_initial(&self) -> impl Iterator<Item = Term> + '_ {
        let window: VecDeque<Term> = self.initial.iter().cloned().collect();
        let (p, q) = (self.p, self.q);
        std::iter::successors(Some((window, Term::zero())), move |(w, _)| {
            let mut w = w.clone();
            let prev = &w[q - 1] - &w[q - 1 - p];
            w.pop_back();
            w.push_front(prev.clone());
            Some((w, prev))
        })
        .skip(1)
        .map(|(_, v)| v)
    }

    /// Term of an integer preset as a [`Natural`]; checks denominator 1.
    pub fn natural_term(&self, n: i64) -> Natural {
        rational_to_natural(&self.term(n))
    }

    /// Infinite iterator over natural terms at n = 0, 1, 2, ... for integer presets.
    pub fn natural_forward(&self) -> impl Iterator<Item = Natural> + '_ {
        self.full_forward().map(|t| rational_to_natural(&t))
    }
}

fn rational_to_natural(t: &Term) -> Natural {
    assert!(t.denom().is_one(), "integer preset produced non-integer term {t}");
    assert!(!t.numer().is_negative(), "integer preset produced negative term {t}");
    t.numer().to_biguint().expect("checked nonnegative")
}

/// G_n(a) from the initials G_0(a) = G_2(a) = 1, G_1(a) = a.
pub fn param_gibonacci(a: &Term, n: i64) -> Term {
    RecurrenceSpec::gibonacci_with(a.clone()).term(n)
}

/// Convenience: exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Term {
    Term::new(BigInt::from(num), BigInt::from(den))
}
