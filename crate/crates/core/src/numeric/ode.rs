//! Dormand–Prince 5(4) single steps for small fixed-size systems.

pub const N: usize = 3;
pub type State = [f64; N];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub y: State,
    /// Scaled RMS error norm; the step is acceptable when `<= 1`.
    pub err: f64,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

/// One Dormand–Prince step of size `h` from `(t, y)`. Returns `None` when
/// the right-hand side produced a non-finite value.
pub fn dopri5_step<F>(f: &F, t: f64, y: &State, h: f64, rtol: f64, atol: f64) -> Option<Step>
where
    F: Fn(f64, &State) -> Option<State>,
{
    let k1 = f(t, y)?;
    let k2 = f(t + C2 * h, &axpy(y, h, &[(A21, &k1)]))?;
    let k3 = f(t + C3 * h, &axpy(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = f(t + C4 * h, &axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(
        t + C5 * h,
        &axpy(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = f(
        t + h,
        &axpy(y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    )?;
    let y1 = axpy(y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(t + h, &y1)?;
    let mut sq = 0.0;
    for i in 0..N {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = atol + rtol * y[i].abs().max(y1[i].abs());
        sq += (e / sc) * (e / sc);
    }
    let err = (sq / N as f64).sqrt();
    if !err.is_finite() || y1.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(Step { y: y1, err })
}

/// Step-size update factor for a fifth-order pair.
pub fn step_factor(err: f64) -> f64 {
    if err == 0.0 {
        return 5.0;
    }
    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_t: f64, y: &State| Some([y[1], -y[0], 0.0]);
        let mut y = [1.0, 0.0, 0.0];
        let mut t = 0.0;
        let end = 2.0 * std::f64::consts::PI;
        let mut h: f64 = 0.1;
        while t < end {
            h = h.min(end - t);
            let st = dopri5_step(&f, t, &y, h, 1e-11, 1e-13).unwrap();
            if st.err <= 1.0 {
                t += h;
                y = st.y;
            }
            h *= step_factor(st.err);
        }
        assert!((y[0] - 1.0).abs() < 1e-9 && y[1].abs() < 1e-9, "{y:?}");
    }
}
