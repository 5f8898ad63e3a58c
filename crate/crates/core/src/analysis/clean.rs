use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cir::{Cir, Tap};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CleanResult {
    pub cir: Cir,
    pub iterations: usize,
    /// False when `max_iters` ran out before the residual fell below the
    /// stop level; the taps found so far are still returned.
    pub converged: bool,
}

/// CLEAN deconvolution of a sampled waveform by a sampled pulse template.
///
/// Each iteration correlates the residual with the template, takes the
/// shift with the largest magnitude (earliest shift on ties), records a tap
/// with the normalized complex correlation as amplitude and subtracts the
/// scaled, shifted template. Iteration stops once the residual peak is
/// below `stop_fraction` of the original peak. Tap delays are shifts times
/// `sample_spacing_ns`, so a waveform equal to the template yields one unit
/// tap at 0 ns.
pub fn clean_deconvolve(
    raw: &[Complex64],
    template: &[Complex64],
    sample_spacing_ns: f64,
    stop_fraction: f64,
    max_iters: usize,
) -> Result<CleanResult> {
    if template.iter().all(|s| s.norm_sqr() == 0.0) {
        return Err(Error::InvalidParameter("template is zero".into()));
    }
    if !(stop_fraction > 0.0 && stop_fraction < 1.0) {
        return Err(Error::InvalidParameter("stop fraction must lie in (0, 1)".into()));
    }
    let window_ns = raw.len().saturating_sub(1).max(1) as f64 * sample_spacing_ns;
    let peak_of = |x: &[Complex64]| x.iter().map(|s| s.norm()).fold(0.0, f64::max);

    let original_peak = peak_of(raw);
    let mut residual = raw.to_vec();
    let mut found: BTreeMap<usize, Complex64> = BTreeMap::new();
    let mut iterations = 0;
    let mut converged = original_peak == 0.0;
    while !converged && iterations < max_iters {
        let mut best = (0usize, Complex64::new(0.0, 0.0), 0.0f64);
        for shift in 0..residual.len() {
            let overlap = template.len().min(residual.len() - shift);
            let (mut corr, mut energy) = (Complex64::new(0.0, 0.0), 0.0);
            for (r, t) in residual[shift..shift + overlap].iter().zip(&template[..overlap]) {
                corr += r * t.conj();
                energy += t.norm_sqr();
            }
            if energy == 0.0 {
                continue;
            }
            let score = corr.norm() / energy.sqrt();
            if score > best.2 {
                best = (shift, corr / energy, score);
            }
        }
        let (shift, amplitude, score) = best;
        if score == 0.0 {
            break;
        }
        for (r, t) in residual[shift..].iter_mut().zip(template) {
            *r -= amplitude * t;
        }
        *found.entry(shift).or_default() += amplitude;
        iterations += 1;
        converged = peak_of(&residual) < stop_fraction * original_peak;
    }
    let taps = found
        .into_iter()
        .map(|(shift, a)| Tap::new(shift as f64 * sample_spacing_ns, a))
        .collect();
    Ok(CleanResult {
        cir: Cir::new(taps, sample_spacing_ns, window_ns)?,
        iterations,
        converged,
    })
}
