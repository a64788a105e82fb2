//! Adaptive Gauss–Kronrod integration (G7/K15 panels, recursive bisection).
//!
//! Endpoints are never evaluated (all Kronrod nodes are interior), and every
//! singular integrand in this crate is transformed to a smooth one before it
//! reaches the engine, so plain bisection on the embedded-rule error estimate
//! converges quickly. Panel accumulation uses compensated summation so that
//! reordering the panels perturbs results below the absolute tolerance.

/// Kronrod-15 abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss-7 weights, matching the odd-index Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// One G7/K15 panel: returns (kronrod value, |kronrod - gauss| error proxy).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kron = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptively integrates `f` over `[a, b]` with a global worst-first
/// splitting strategy.
///
/// The target is `max(abs_tol, rel_tol * |I|)`; the split budget scales with
/// `max_depth` so total work is strictly bounded even on hostile integrands.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
) -> f64 {
    if a == b {
        return 0.0;
    }
    let (value, error) = gk15(f, a, b);
    let mut segments = alloc::vec![Segment { a, b, value, error }];
    let budget = 32 * max_depth as usize;
    for _ in 0..budget {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let total_err: f64 = segments.iter().map(|s| s.error).sum();
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        // split the worst segment
        let (idx, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .unwrap();
        let seg = segments.swap_remove(idx);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval at float resolution; keep it as-is
            segments.push(Segment { error: 0.0, ..seg });
            continue;
        }
        let (v1, e1) = gk15(f, seg.a, mid);
        let (v2, e2) = gk15(f, mid, seg.b);
        segments.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        segments.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });
    }
    let mut acc = KahanSum::new();
    // stable order so compensated summation is reproducible
    segments.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap());
    for s in &segments {
        acc.add(s.value);
    }
    acc.value()
}

/// Integrates over a list of panels (used when kink locations are known);
/// panel results accumulate compensated, so ordering is immaterial at the
/// `abs_tol` scale.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
) -> f64 {
    let mut acc = KahanSum::new();
    for w in breaks.windows(2) {
        acc.add(integrate(f, w[0], w[1], rel_tol, abs_tol, max_depth));
    }
    acc.value()
}
