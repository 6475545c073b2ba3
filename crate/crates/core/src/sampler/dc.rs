//! Uniform (n,m,D)-multigraph sampling through the half-edge bijection:
//! draw vertex degrees i.i.d. from the tilted law P(d) = chi^d/(d! Delta(chi)),
//! reject until they sum to 2m, then scatter the 2m labeled half-edges
//! uniformly over the degree slots and read edge e off labels (2e-1, 2e).
//!
//! The i.i.d. draw is realized per attempt through its count profile: the
//! number of vertices receiving each admissible degree is multinomial, so
//! the profile is drawn by conditional binomials and the attempt accepted
//! iff the implied half-edge total hits 2m — the same acceptance process
//! as a vertex-by-vertex draw at O(|D|) instead of O(n) per attempt.
//! Accepted profiles are scattered over the labels by a uniform shuffle,
//! which reproduces the conditioned i.i.d. law exactly.
//!
//! The conditional law of an accepted sequence is proportional to
//! 1/prod d_i!, independent of the tilt, so any positive chi yields exact
//! uniformity; solving for chi just maximizes the acceptance rate.

use crate::degree::{solve_chi, DegreeSet};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

pub struct DcSampler {
    n: u32,
    m: u64,
    /// admissible degrees, ascending
    degree_values: Vec<u32>,
    /// P(d) under the tilt, aligned with degree_values
    probs: Vec<f64>,
    /// suffix sums of probs
    suffix: Vec<f64>,
    counts: Vec<u64>,
    degrees: Vec<u32>,
    slots: Vec<u32>,
    edges: Vec<(u32, u32)>,
    max_attempts: u64,
}

impl DcSampler {
    pub fn new(n: u32, m: u64, dset: &DegreeSet, max_attempts: u64) -> Result<Self> {
        let sum = 2 * m;
        let lo = n as u64 * dset.min_degree() as u64;
        let hi = n as u64 * dset.max_degree() as u64;
        if sum < lo || sum > hi {
            return Err(Error::Infeasible(format!(
                "2m = {sum} outside achievable degree sums [{lo}, {hi}]"
            )));
        }
        let period = dset.period();
        if period > 1 && (sum - lo) % period as u64 != 0 {
            return Err(Error::Infeasible(format!(
                "2m - n*min(D) = {} is not a multiple of the degree-set period {period}",
                sum - lo
            )));
        }

        // tilt: the interior ratio has an optimal chi; boundary or singleton
        // cases force the degrees anyway, so a unit tilt is still uniform
        let ratio = sum as f64 / n as f64;
        let chi = if dset.min_degree() < dset.max_degree()
            && ratio > dset.min_degree() as f64
            && ratio < dset.max_degree() as f64
        {
            solve_chi(dset, ratio)?.chi
        } else {
            1.0
        };
        let weights: Vec<f64> = dset
            .degrees()
            .iter()
            .map(|&d| {
                let mut w = 1.0;
                for i in 1..=d {
                    w *= chi / i as f64;
                }
                w
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut suffix = vec![0.0; probs.len()];
        let mut acc = 0.0;
        for i in (0..probs.len()).rev() {
            acc += probs[i];
            suffix[i] = acc;
        }

        Ok(DcSampler {
            n,
            m,
            degree_values: dset.degrees().to_vec(),
            probs,
            suffix,
            counts: vec![0; dset.degrees().len()],
            degrees: vec![0; n as usize],
            slots: Vec::with_capacity(2 * m as usize),
            edges: vec![(0, 0); m as usize],
            max_attempts,
        })
    }

    /// Draw the next uniform multigraph; returns the number of degree-
    /// sequence attempts consumed. The edge list lives in the sampler's
    /// buffer until the next draw.
    pub fn draw(&mut self, rng: &mut impl Rng) -> Result<u64> {
        let target = 2 * self.m;
        let n = self.n as u64;
        let k = self.degree_values.len();
        let mut attempts = 0u64;
        loop {
            attempts += 1;
            if attempts > self.max_attempts {
                return Err(Error::SamplerStall(format!(
                    "no degree sequence summing to {target} after {} attempts",
                    self.max_attempts
                )));
            }
            let mut remaining = n;
            let mut sum = 0u64;
            for i in 0..k {
                let c = if i + 1 == k {
                    remaining
                } else {
                    let p = (self.probs[i] / self.suffix[i]).clamp(0.0, 1.0);
                    let draw = Binomial::new(remaining, p)
                        .expect("clamped probability is valid")
                        .sample(rng);
                    draw.min(remaining)
                };
                self.counts[i] = c;
                remaining -= c;
                sum += self.degree_values[i] as u64 * c;
            }
            if sum == target {
                break;
            }
        }

        // scatter the accepted profile uniformly over the vertex labels
        let mut pos = 0usize;
        for (i, &c) in self.counts.iter().enumerate() {
            let d = self.degree_values[i];
            for _ in 0..c {
                self.degrees[pos] = d;
                pos += 1;
            }
        }
        debug_assert_eq!(pos, self.n as usize);
        self.degrees.shuffle(rng);

        self.slots.clear();
        for (v, &d) in self.degrees.iter().enumerate() {
            for _ in 0..d {
                self.slots.push(v as u32 + 1);
            }
        }
        debug_assert_eq!(self.slots.len() as u64, target);
        self.slots.shuffle(rng);
        for e in 0..self.m as usize {
            self.edges[e] = (self.slots[2 * e], self.slots[2 * e + 1]);
        }
        Ok(attempts)
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}
