//! Closed-form response of the linear plant, independent of the crate's
//! integrators and matrix builder.

/// 2×2 matrix exponential via Sylvester's formula; requires distinct real
/// eigenvalues, which holds for every motor in these tests.
pub fn expm2(a: [[f64; 2]; 2], t: f64) -> [[f64; 2]; 2] {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let disc = tr * tr - 4.0 * det;
    assert!(disc > 0.0, "oracle needs distinct real eigenvalues");
    let sq = disc.sqrt();
    let l1 = 0.5 * (tr + sq);
    let l2 = 0.5 * (tr - sq);
    let (e1, e2) = ((l1 * t).exp(), (l2 * t).exp());
    let c0 = (l1 * e2 - l2 * e1) / (l1 - l2);
    let c1 = (e1 - e2) / (l1 - l2);
    [
        [c0 + c1 * a[0][0], c1 * a[0][1]],
        [c1 * a[1][0], c0 + c1 * a[1][1]],
    ]
}

/// Plant matrices written out from the ODEs.
pub fn plant(r: f64, l: f64, j: f64, f: f64, k: f64) -> ([[f64; 2]; 2], [f64; 2]) {
    ([[-r / l, -k / l], [k / j, -f / j]], [1.0 / l, 0.0])
}

/// x(t) = e^{At} x0 + A^{-1}(e^{At} − I) B u for constant u.
pub fn exact(a: [[f64; 2]; 2], b: [f64; 2], x0: [f64; 2], u: f64, t: f64) -> [f64; 2] {
    let e = expm2(a, t);
    let free = [
        e[0][0] * x0[0] + e[0][1] * x0[1],
        e[1][0] * x0[0] + e[1][1] * x0[1],
    ];
    let bu = [b[0] * u, b[1] * u];
    let rhs = [
        (e[0][0] - 1.0) * bu[0] + e[0][1] * bu[1],
        e[1][0] * bu[0] + (e[1][1] - 1.0) * bu[1],
    ];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let forced = [
        (a[1][1] * rhs[0] - a[0][1] * rhs[1]) / det,
        (-a[1][0] * rhs[0] + a[0][0] * rhs[1]) / det,
    ];
    [free[0] + forced[0], free[1] + forced[1]]
}

#[allow(dead_code)]
pub fn rel_err(x: [f64; 2], y: [f64; 2]) -> f64 {
    let d = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt();
    d / (y[0].powi(2) + y[1].powi(2)).sqrt()
}
