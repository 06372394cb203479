//! Brute-force reference for `inf g(x) / f(x)` on `R^n`.
//!
//! Both norms are homogeneous, so the infimum over the sphere equals the
//! infimum over the cube surface `max |x_i| = 1`. Each face is enumerated on
//! a coarse grid, then the best candidates are refined on finer local grids
//! down to the requested resolution. Norms are evaluated by the formulas
//! below, not by the library.

#![allow(dead_code)]

pub fn pnorm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return x.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn weighted_pnorm(x: &[f64], p: f64, w: &[f64]) -> f64 {
    if p.is_infinite() {
        return x.iter().zip(w).fold(0.0, |m, (v, c)| m.max(c * v.abs()));
    }
    x.iter()
        .zip(w)
        .map(|(v, c)| c * v.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

const COARSE: f64 = 0.25;
const KEEP: usize = 6;
const WINDOW: i32 = 2;

fn enumerate(free: usize, center: &[f64], step: f64, span: i32, mut visit: impl FnMut(&[f64])) {
    let width = (2 * span + 1) as usize;
    let total = width.pow(free as u32);
    let mut point = vec![0.0; free];
    for mut code in 0..total {
        for (k, slot) in point.iter_mut().enumerate() {
            let offset = (code % width) as i32 - span;
            code /= width;
            *slot = (center[k] + f64::from(offset) * step).clamp(-1.0, 1.0);
        }
        visit(&point);
    }
}

fn embed(face: usize, sign: f64, free: &[f64]) -> Vec<f64> {
    let mut x = Vec::with_capacity(free.len() + 1);
    x.extend_from_slice(&free[..face]);
    x.push(sign);
    x.extend_from_slice(&free[face..]);
    x
}

/// Approximate minimum of `ratio` over the cube surface of `R^n` with final
/// grid spacing at most `resolution`; returns the value and the minimizer.
pub fn brute_min(n: usize, resolution: f64, ratio: impl Fn(&[f64]) -> f64) -> (f64, Vec<f64>) {
    assert!(n >= 1);
    let free = n - 1;
    let coarse_span = (1.0 / COARSE).round() as i32;
    let mut best: Vec<(f64, usize, f64, Vec<f64>)> = Vec::new();
    let push = |cands: &mut Vec<(f64, usize, f64, Vec<f64>)>, r: f64, face: usize, sign: f64, y: &[f64]| {
        cands.push((r, face, sign, y.to_vec()));
        if cands.len() > 4 * KEEP {
            cands.sort_by(|a, b| a.0.total_cmp(&b.0));
            cands.truncate(KEEP);
        }
    };
    let zero = vec![0.0; free];
    for face in 0..n {
        for sign in [1.0, -1.0] {
            enumerate(free, &zero, COARSE, coarse_span, |y| {
                let r = ratio(&embed(face, sign, y));
                push(&mut best, r, face, sign, y);
            });
        }
    }
    best.sort_by(|a, b| a.0.total_cmp(&b.0));
    best.truncate(KEEP);
    let mut step = COARSE;
    while step > resolution {
        step /= 2.0;
        let mut next = Vec::new();
        for (_, face, sign, center) in &best {
            enumerate(free, center, step, WINDOW, |y| {
                let r = ratio(&embed(*face, *sign, y));
                push(&mut next, r, *face, *sign, y);
            });
        }
        next.sort_by(|a, b| a.0.total_cmp(&b.0));
        next.dedup_by(|a, b| a.1 == b.1 && a.2 == b.2 && a.3 == b.3);
        next.truncate(KEEP);
        best = next;
    }
    let (r, face, sign, y) = best.swap_remove(0);
    (r, embed(face, sign, &y))
}
