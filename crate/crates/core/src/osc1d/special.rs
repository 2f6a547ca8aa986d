use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 4.0;

/// `sin(u)/u` with `sinc(0) = 1`.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
    } else {
        u.sin() / u
    }
}

/// Sine integral `Si(x) = ∫₀^x sin(u)/u du`.
pub fn sine_integral(x: f64) -> f64 {
    let t = x.abs();
    let v = if t <= SERIES_LIMIT { si_series(t) } else { cisi_fraction(t).1 };
    v.copysign(x)
}

/// Cosine integral `Ci(x) = γ + ln x + ∫₀^x (cos u − 1)/u du` for `x > 0`.
pub fn cosine_integral(x: f64) -> f64 {
    assert!(x > 0.0, "Ci is evaluated for positive arguments only");
    if x <= SERIES_LIMIT {
        ci_series(x)
    } else {
        cisi_fraction(x).0
    }
}

/// `(Ci(x), Si(x))` for `x > 0`.
pub fn cisi(x: f64) -> (f64, f64) {
    (cosine_integral(x), sine_integral(x))
}

fn si_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut term = t; // t^{2n+1} / (2n+1)!
    let mut sum = t;
    let mut n = 0.0;
    loop {
        term *= -t2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        n += 1.0;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() <= 1e-18 * sum.abs() {
            return sum;
        }
    }
}

fn ci_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut term = 1.0; // t^{2n} / (2n)!
    let mut sum = 0.0;
    let mut n = 0.0;
    loop {
        term *= -t2 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
        n += 1.0;
        let add = term / (2.0 * n);
        sum += add;
        if add.abs() < 1e-18 * (sum.abs() + 1.0) {
            return EULER_GAMMA + t.ln() + sum;
        }
    }
}

/// Modified Lentz evaluation of the continued fraction for `E₁(it)`.
fn cisi_fraction(t: f64) -> (f64, f64) {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, t);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    let h = Complex64::new(t.cos(), -t.sin()) * h;
    (-h.re, FRAC_PI_2 + h.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-16);
        assert!((sinc(1.0) - 0.841_470_984_807_896_5).abs() < 1e-16);
        assert_eq!(sinc(2.5), sinc(-2.5));
        assert!((sinc(5e-5) - (5e-5f64).sin() / 5e-5).abs() < 4e-16);
    }

    #[test]
    fn reference_values() {
        // Abramowitz & Stegun table 5.1.
        assert!((sine_integral(1.0) - 0.946_083_070_367_183).abs() < 1e-15);
        assert!((sine_integral(10.0) - 1.658_347_594_218_874).abs() < 1e-14);
        assert!((cosine_integral(1.0) - 0.337_403_922_900_968_1).abs() < 1e-15);
        assert!((cosine_integral(10.0) - (-0.045_456_433_004_455_4)).abs() < 1e-14);
    }

    #[test]
    fn continuity_at_switch() {
        let below = si_series(SERIES_LIMIT);
        let above = cisi_fraction(SERIES_LIMIT);
        assert!((below - above.1).abs() < 1e-14);
        assert!((ci_series(SERIES_LIMIT) - above.0).abs() < 1e-14);
    }

    #[test]
    fn limit_at_infinity() {
        assert_eq!(sine_integral(0.0), 0.0);
        assert!((sine_integral(1e6) - FRAC_PI_2).abs() < 1e-5);
        assert!((sine_integral(-1e6) + FRAC_PI_2).abs() < 1e-5);
    }
}
