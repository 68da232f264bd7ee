//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveSimpson {
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for AdaptiveSimpson {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_depth: 60,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

impl AdaptiveSimpson {
    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let whole = simpson(a, b, fa, fm, fb);
        // Seed the absolute tolerance from a 5-point estimate so one lucky
        // coarse panel cannot set it too loose or too tight.
        let (l, r) = (0.5 * (a + m), 0.5 * (m + b));
        let refined = simpson(a, m, fa, f(l), fm) + simpson(m, b, fm, f(r), fb);
        let scale = refined.abs().max(whole.abs());
        let eps = if scale > 0.0 {
            self.rel_tol * scale
        } else {
            self.rel_tol
        };
        let panel = Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
        };
        self.recurse(&f, panel, eps, 0)
    }

    fn recurse<F: Fn(f64) -> f64>(&self, f: &F, p: Panel, eps: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        let sum = left + right;
        if delta.abs() <= 15.0 * eps || delta.abs() <= 8.0 * f64::EPSILON * sum.abs() {
            return Ok(sum + delta / 15.0);
        }
        if depth >= self.max_depth {
            return Err(Error::Quadrature {
                a: p.a,
                b: p.b,
                depth,
            });
        }
        let lp = Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
        };
        let rp = Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
        };
        Ok(self.recurse(f, lp, 0.5 * eps, depth + 1)?
            + self.recurse(f, rp, 0.5 * eps, depth + 1)?)
    }
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}
