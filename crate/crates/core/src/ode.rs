//! Runge-Kutta integrators shared by the shooting and stellar-structure
//! solvers: classic fixed-step RK4 and an adaptive embedded Cash-Karp
//! 4(5) pair with an event-stopping driver.

/// Accumulated integration output: all accepted steps in order.
#[derive(Debug, Clone)]
pub struct Solution<const N: usize> {
    pub x: Vec<f64>,
    pub y: Vec<[f64; N]>,
}

impl<const N: usize> Solution<N> {
    pub fn last(&self) -> (f64, [f64; N]) {
        (*self.x.last().unwrap(), *self.y.last().unwrap())
    }
}

/// Single classic RK4 step.
pub fn rk4_step<const N: usize, F>(f: &F, x: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(x, y);
    let mut y2 = *y;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = f(x + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(x + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + h * k3[i];
    }
    let k4 = f(x + h, &y2);
    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrate on a uniform grid with `steps` RK4 steps, recording every point.
pub fn integrate_fixed<const N: usize, F>(
    f: &F,
    x0: f64,
    y0: [f64; N],
    x_end: f64,
    steps: usize,
) -> Solution<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let h = (x_end - x0) / steps as f64;
    let mut sol = Solution {
        x: Vec::with_capacity(steps + 1),
        y: Vec::with_capacity(steps + 1),
    };
    sol.x.push(x0);
    sol.y.push(y0);
    let mut y = y0;
    for k in 0..steps {
        let x = x0 + h * k as f64;
        y = rk4_step(f, x, &y, h);
        sol.x.push(x0 + h * (k + 1) as f64);
        sol.y.push(y);
    }
    sol
}

// Cash-Karp tableau.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0];
const A5: [f64; 4] = [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0];
const A6: [f64; 5] = [
    1631.0 / 55296.0,
    175.0 / 512.0,
    575.0 / 13824.0,
    44275.0 / 110592.0,
    253.0 / 4096.0,
];
const C: [f64; 6] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0];
const B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
];

/// One Cash-Karp step: returns the 5th-order result and the 4th/5th-order
/// difference as the local error estimate.
pub fn cash_karp_step<const N: usize, F>(
    f: &F,
    x: f64,
    y: &[f64; N],
    h: f64,
) -> ([f64; N], [f64; N])
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; 6];
    k[0] = f(x, y);
    let stage = |ks: &[[f64; N]; 6], coeffs: &[f64], y: &[f64; N]| {
        let mut yt = *y;
        for i in 0..N {
            let mut acc = 0.0;
            for (j, &a) in coeffs.iter().enumerate() {
                acc += a * ks[j][i];
            }
            yt[i] = y[i] + h * acc;
        }
        yt
    };
    let yt = stage(&k, &A2, y);
    k[1] = f(x + C[1] * h, &yt);
    let yt = stage(&k, &A3, y);
    k[2] = f(x + C[2] * h, &yt);
    let yt = stage(&k, &A4, y);
    k[3] = f(x + C[3] * h, &yt);
    let yt = stage(&k, &A5, y);
    k[4] = f(x + C[4] * h, &yt);
    let yt = stage(&k, &A6, y);
    k[5] = f(x + C[5] * h, &yt);

    let mut y5 = *y;
    let mut err = [0.0; N];
    for i in 0..N {
        let mut s5 = 0.0;
        let mut s4 = 0.0;
        for j in 0..6 {
            s5 += B5[j] * k[j][i];
            s4 += B4[j] * k[j][i];
        }
        y5[i] = y[i] + h * s5;
        err[i] = h * (s5 - s4);
    }
    (y5, err)
}

/// Controller settings for the adaptive driver.
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub max_steps: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive {
            rtol: 1e-10,
            atol: 1e-12,
            h_init: 1e-4,
            max_steps: 2_000_000,
        }
    }
}

fn error_norm<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], opt: &Adaptive) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        let scale = opt.atol + opt.rtol * y0[i].abs().max(y1[i].abs());
        worst = worst.max((err[i] / scale).abs());
    }
    worst
}

/// Adaptive integration from x0 to x_end, recording accepted steps.
pub fn integrate_adaptive<const N: usize, F>(
    f: &F,
    x0: f64,
    y0: [f64; N],
    x_end: f64,
    opt: &Adaptive,
) -> Solution<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let (sol, _) = integrate_with_event(f, x0, y0, x_end, opt, &|_, _| 1.0, 1e-12);
    sol
}

/// Adaptive integration that stops early when `event` becomes <= 0.
///
/// The event must be positive at the start; on the first step whose
/// endpoint makes it nonpositive, the crossing is refined by bisection on
/// the step length until the bracket shrinks below `xtol_rel` relative to
/// the current x. Returns the recorded solution (up to and including the
/// refined crossing point when one is found) and the crossing.
pub fn integrate_with_event<const N: usize, F, G>(
    f: &F,
    x0: f64,
    y0: [f64; N],
    x_max: f64,
    opt: &Adaptive,
    event: &G,
    xtol_rel: f64,
) -> (Solution<N>, Option<(f64, [f64; N])>)
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> f64,
{
    let mut sol = Solution {
        x: vec![x0],
        y: vec![y0],
    };
    let mut x = x0;
    let mut y = y0;
    let mut h = opt.h_init.min(x_max - x0);
    for _ in 0..opt.max_steps {
        if x >= x_max {
            return (sol, None);
        }
        h = h.min(x_max - x);
        let (y_new, err) = cash_karp_step(f, x, &y, h);
        let en = error_norm(&err, &y, &y_new, opt);
        if en > 1.0 {
            h *= (0.9 * en.powf(-0.25)).max(0.2);
            continue;
        }
        let x_new = x + h;
        if event(x_new, &y_new) <= 0.0 {
            // bisect on step length from the last accepted point
            let mut lo = 0.0;
            let mut hi = h;
            let mut y_hi = y_new;
            while hi - lo > xtol_rel * x_new.abs().max(1.0) {
                let mid = 0.5 * (lo + hi);
                let (y_mid, _) = cash_karp_step(f, x, &y, mid);
                if event(x + mid, &y_mid) <= 0.0 {
                    hi = mid;
                    y_hi = y_mid;
                } else {
                    lo = mid;
                }
            }
            sol.x.push(x + hi);
            sol.y.push(y_hi);
            return (sol, Some((x + hi, y_hi)));
        }
        x = x_new;
        y = y_new;
        sol.x.push(x);
        sol.y.push(y);
        h *= (0.9 * en.powf(-0.2)).min(5.0).max(0.2);
    }
    (sol, None)
}
