//! Uniform-grid quadrature helpers.

/// Composite trapezoid rule on `[a, b]` with `intervals` equal panels.
pub fn trapezoid(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals > 0);
    let h = (b - a) / intervals as f64;
    let ends = 0.5 * (f(a) + f(b));
    let interior: f64 = (1..intervals).map(|i| f(a + h * i as f64)).sum();
    h * (ends + interior)
}

/// Composite Simpson rule; `intervals` is rounded up to even.
pub fn simpson(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = (intervals.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}
