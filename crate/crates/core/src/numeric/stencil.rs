/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
///
/// Returns `w[m][j]`, the weight of node `j` in the `m`-th derivative at
/// `z`, for `m = 0..=order`.
pub fn fornberg_weights(z: f64, nodes: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Indices of a `width`-point window around `i` clamped to `0..len`.
pub fn window(i: usize, len: usize, width: usize) -> std::ops::Range<usize> {
    let width = width.min(len);
    let half = width / 2;
    let start = i.saturating_sub(half).min(len - width);
    start..start + width
}

/// First derivative of samples `f` with respect to abscissae `t`, using a
/// five-point stencil (one-sided near the ends).
pub fn derivative(t: &[f64], f: &[f64]) -> Vec<f64> {
    (0..t.len())
        .map(|i| {
            let r = window(i, t.len(), 5);
            let w = fornberg_weights(t[i], &t[r.clone()], 1);
            r.zip(&w[1]).map(|(j, wj)| wj * f[j]).sum()
        })
        .collect()
}
