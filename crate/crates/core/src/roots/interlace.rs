use alloc::vec::Vec;

use super::real::{isolate_real_roots, IsolatingInterval};
use crate::algebra::rational::int;
use crate::algebra::sturm::{count_above, count_below};
use crate::algebra::SturmChain;
use crate::error::{Error, Result};
use crate::tree::{RatFunc, TreeVariant};

/// Which polynomial a root belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootOwner {
    Numerator,
    Denominator,
}

/// Real-rootedness and interlacing of a forward vertex `p/q`: with zeros
/// `r_i` of `p` and poles `s_i` of `q`, the merged order must read
/// `s_n < r_n < ... < s_1 < r_1 <= 0` with `s_n <= -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub degree: usize,
    pub p_square_free: bool,
    pub q_square_free: bool,
    pub p_real_roots: usize,
    pub q_real_roots: usize,
    pub coprime: bool,
    pub alternating: bool,
    pub largest_zero_nonpositive: bool,
    pub smallest_pole_at_most_minus_one: bool,
    /// Ascending roots of `p*q`, tagged by owner. Empty unless the
    /// square-free and coprimality checks passed.
    pub merged: Vec<(RootOwner, IsolatingInterval)>,
}

impl InterlacingReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.p_square_free {
            out.push("numerator has a repeated root");
        }
        if !self.q_square_free {
            out.push("denominator has a repeated root");
        }
        if self.p_real_roots != self.degree {
            out.push("numerator is not fully real-rooted");
        }
        if self.q_real_roots != self.degree {
            out.push("denominator is not fully real-rooted");
        }
        if !self.coprime {
            out.push("numerator and denominator share a root");
        }
        if !self.alternating {
            out.push("zeros and poles do not alternate");
        }
        if !self.largest_zero_nonpositive {
            out.push("largest zero is positive");
        }
        if !self.smallest_pole_at_most_minus_one {
            out.push("smallest pole exceeds -1");
        }
        out
    }

    pub fn zeros(&self) -> impl Iterator<Item = &IsolatingInterval> {
        self.merged
            .iter()
            .filter(|(o, _)| *o == RootOwner::Numerator)
            .map(|(_, iv)| iv)
    }

    pub fn poles(&self) -> impl Iterator<Item = &IsolatingInterval> {
        self.merged
            .iter()
            .filter(|(o, _)| *o == RootOwner::Denominator)
            .map(|(_, iv)| iv)
    }
}

pub fn interlacing_verdict(v: &RatFunc) -> Result<InterlacingReport> {
    if v.variant() != TreeVariant::Forward {
        return Err(Error::OutOfDomain("interlacing applies to forward vertices"));
    }
    let (p, q) = (v.p(), v.q());
    let degree = q.degree().unwrap_or(0).max(p.degree().unwrap_or(0));
    let p_square_free = p.is_square_free();
    let q_square_free = q.is_square_free();
    let p_real_roots = SturmChain::new(p)?.count_all();
    let q_real_roots = SturmChain::new(q)?.count_all();
    let coprime = p.gcd(q).degree() == Some(0);

    let mut merged = Vec::new();
    let mut alternating = false;
    if p_square_free && q_square_free && coprime {
        for iv in isolate_real_roots(&(p * q))? {
            let owner = if iv.sign_change_of(p) {
                RootOwner::Numerator
            } else {
                RootOwner::Denominator
            };
            merged.push((owner, iv));
        }
        alternating = merged.len() == 2 * degree
            && merged.iter().enumerate().all(|(i, (owner, _))| {
                *owner
                    == if i % 2 == 0 {
                        RootOwner::Denominator
                    } else {
                        RootOwner::Numerator
                    }
            });
    }
    let largest_zero_nonpositive = !p.is_zero() && count_above(p, &int(0))? == 0;
    let smallest_pole_at_most_minus_one = count_below(q, &int(-1))? >= 1;

    Ok(InterlacingReport {
        degree,
        p_square_free,
        q_square_free,
        p_real_roots,
        q_real_roots,
        coprime,
        alternating,
        largest_zero_nonpositive,
        smallest_pole_at_most_minus_one,
        merged,
    })
}
