use approx::assert_relative_eq;
use nphoton_core::oracle::quadrature::{integrate, Tolerance};
use nphoton_core::GaussianSpectrum;
use num_complex::Complex64;

const TOL: Tolerance = Tolerance {
    abs: 0.0,
    rel: 1e-13,
};

/// `|g(t)|²` with `g(t) = ∫ φ(ε) e^{−iεt} dε`, done by quadrature.
fn intensity(spectrum: &GaussianSpectrum, t: f64) -> f64 {
    let s = spectrum.sigma_phi;
    let breakpoints: Vec<f64> = (0..=40).map(|k| s * (-10.0 + 0.5 * k as f64)).collect();
    integrate(
        |eps| Complex64::new(0.0, -eps * t).exp() * spectrum.phi(eps),
        &breakpoints,
        Tolerance {
            abs: 1e-15 * s,
            rel: 1e-13,
        },
        1 << 20,
    )
    .unwrap()
    .value
    .norm_sqr()
}

fn numeric_width(spectrum: &GaussianSpectrum) -> f64 {
    let reach = 12.0 * spectrum.g_intensity_width();
    let breakpoints: Vec<f64> = (0..=24).map(|k| -1.0 + k as f64 / 12.0).collect();
    let est = integrate(
        |u| {
            let w = intensity(spectrum, reach * u);
            Complex64::new(w, w * u * u)
        },
        &breakpoints,
        TOL,
        1 << 20,
    )
    .unwrap();
    reach * (est.value.im / est.value.re).sqrt()
}

#[test]
fn intensity_width_by_quadrature() {
    for sigma in [3.7e-4, 1e-2, 0.3] {
        let spectrum = GaussianSpectrum::new(2.35, sigma).unwrap();
        assert_relative_eq!(
            numeric_width(&spectrum),
            spectrum.g_intensity_width(),
            max_relative = 1e-6
        );
    }
}

#[test]
fn paper_bandwidth() {
    let spectrum = GaussianSpectrum::from_width_rad_per_s(2.35, 3.7e11).unwrap();
    assert_relative_eq!(spectrum.g_intensity_width(), 1911.1, max_relative = 1e-4);
}
