//! Globally adaptive Gauss–Kronrod (7, 15) quadrature for real integrands.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate drops below the absolute tolerance. Nodes never touch panel
//! endpoints, so integrands that jump at a support boundary are fine.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute error tolerance on each component.
    pub tol: f64,
    /// Maximum number of bisections applied to any single panel.
    pub max_depth: u32,
    /// Cap on the total number of panels.
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-10,
            max_depth: 100,
            max_panels: 20_000,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    depth: u32,
    value: [f64; N],
    error: f64,
    abs_value: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const N: usize> Eq for Panel<N> {}

impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<const N: usize, G>(g: &mut G, a: f64, b: f64, depth: u32) -> Result<Panel<N>>
where
    G: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    let mut abs_value = 0.0;

    let mut eval = |x: f64| -> Result<[f64; N]> {
        let v = g(x)?;
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::QuadratureFailure(format!("non-finite integrand at {x}")));
        }
        Ok(v)
    };

    let fc = eval(center)?;
    for c in 0..N {
        kronrod[c] += WGK[7] * fc[c];
        gauss[c] += WG[3] * fc[c];
        abs_value += WGK[7] * fc[c].abs();
    }
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        for c in 0..N {
            kronrod[c] += w * (f1[c] + f2[c]);
            abs_value += w * (f1[c].abs() + f2[c].abs());
            if i % 2 == 1 {
                gauss[c] += WG[i / 2] * (f1[c] + f2[c]);
            }
        }
    }

    let mut error: f64 = 0.0;
    let mut value = [0.0; N];
    for c in 0..N {
        value[c] = kronrod[c] * half;
        error = error.max(((kronrod[c] - gauss[c]) * half).abs());
    }
    Ok(Panel {
        a,
        b,
        depth,
        value,
        error,
        abs_value: abs_value * half.abs(),
    })
}

/// Integrates an `N`-component integrand over `[a, b]`.
pub fn integrate_components<const N: usize, G>(
    mut g: G,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<[f64; N]>
where
    G: FnMut(f64) -> Result<[f64; N]>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::QuadratureFailure(format!("non-finite limits [{a}, {b}]")));
    }
    if a > b {
        return Err(Error::QuadratureFailure(format!("reversed limits [{a}, {b}]")));
    }
    if a == b {
        return Ok([0.0; N]);
    }

    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&mut g, a, b, 0)?;
    let mut total_error = first.error;
    let mut total_abs = first.abs_value;
    heap.push(first);

    loop {
        // Below this floor the estimate is dominated by roundoff.
        let floor = 50.0 * f64::EPSILON * total_abs;
        if total_error <= cfg.tol.max(floor) {
            break;
        }
        if heap.len() >= cfg.max_panels {
            return Err(Error::QuadratureFailure(format!(
                "{} panels without reaching tolerance {} (estimate {total_error:e})",
                heap.len(),
                cfg.tol
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= cfg.max_depth {
            return Err(Error::QuadratureFailure(format!(
                "bisection depth {} reached near [{}, {}] (estimate {total_error:e})",
                cfg.max_depth, worst.a, worst.b
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureFailure(format!(
                "panel [{}, {}] cannot be split further",
                worst.a, worst.b
            )));
        }
        let left = gauss_kronrod(&mut g, worst.a, mid, worst.depth + 1)?;
        let right = gauss_kronrod(&mut g, mid, worst.b, worst.depth + 1)?;
        total_error += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }

    // Sum in ascending position for reproducibility.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut sum = [0.0; N];
    for p in &panels {
        for c in 0..N {
            sum[c] += p.value[c];
        }
    }
    Ok(sum)
}

/// `∫_a^b g(x) dx` to absolute tolerance `cfg.tol`.
pub fn real_quadrature<G>(mut g: G, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    integrate_components(|x| Ok([g(x)]), a, b, cfg).map(|[v]| v)
}
