//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use alloc::vec::Vec;

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub intervals: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        // odd Kronrod nodes coincide with the Gauss nodes
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Segment { a, b, value, error }
}

/// Integrate `f` over `[a, b]` until the estimated error falls below
/// `max(abs_tol, rel_tol · |I|)` or `max_intervals` is reached.
///
/// `initial_pieces` presplits the interval, which matters for long,
/// oscillatory integrands where a single 15-point rule can alias.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    initial_pieces: usize,
    max_intervals: usize,
) -> QuadratureResult {
    let pieces = initial_pieces.max(1);
    let width = (b - a) / pieces as f64;
    let mut segments: Vec<Segment> = (0..pieces)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + width };
            gk15(&f, lo, hi)
        })
        .collect();
    loop {
        let total: Complex64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= abs_tol.max(rel_tol * total.norm()) || segments.len() >= max_intervals {
            return QuadratureResult { value: total, error_estimate: error, intervals: segments.len() };
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        segments.push(gk15(&f, seg.a, mid));
        segments.push(gk15(&f, mid, seg.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Complex64::new(x * x * x, x), 0.0, 2.0, 1e-14, 0.0, 1, 100);
        assert!((r.value - Complex64::new(4.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn oscillatory_exponential() {
        let a = 7.3;
        let t = 40.0;
        let r = integrate(|x| Complex64::new(0.0, a * x).exp(), 0.0, t, 1e-12, 0.0, 16, 10_000);
        let exact = (Complex64::new(0.0, a * t).exp() - 1.0) / Complex64::new(0.0, a);
        assert!((r.value - exact).norm() < 1e-12 * exact.norm());
    }
}
