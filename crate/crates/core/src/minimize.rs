//! Bounded one-dimensional minimization: uniform scan followed by
//! golden-section refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`,
/// stopping when the bracket is narrower than `tol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Minimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc <= fd {
        Minimum { x: c, value: fc }
    } else {
        Minimum { x: d, value: fd }
    };
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best.value {
                best = Minimum { x: c, value: fc };
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd <= best.value {
                best = Minimum { x: d, value: fd };
            }
        }
    }
    best
}

/// Global minimum of `f` over `[lo, hi]`: scans `samples` uniform points,
/// then refines around the best one. Ties go to the larger abscissa and
/// the endpoints are kept as candidates so boundary minima are exact.
pub fn scan_then_refine<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> Minimum {
    assert!(samples >= 3 && hi > lo);
    let step = (hi - lo) / (samples - 1) as f64;
    let at = |i: usize| {
        if i == samples - 1 {
            hi
        } else {
            lo + i as f64 * step
        }
    };
    let mut idx = 0;
    let mut fmin = f64::INFINITY;
    for i in 0..samples {
        let v = f(at(i));
        if v <= fmin {
            fmin = v;
            idx = i;
        }
    }
    let grid_best = Minimum {
        x: at(idx),
        value: fmin,
    };
    if idx == 0 || idx == samples - 1 {
        // the scan already sits on a boundary; refine only the inner side
        let (a, b) = if idx == 0 {
            (lo, at(1))
        } else {
            (at(samples - 2), hi)
        };
        let inner = golden_section(&f, a, b, tol);
        return if inner.value < grid_best.value {
            inner
        } else {
            grid_best
        };
    }
    let refined = golden_section(&f, at(idx - 1), at(idx + 1), tol);
    if refined.value < grid_best.value {
        refined
    } else {
        grid_best
    }
}
