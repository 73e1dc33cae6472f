mod common;

use common::{bundled_parameters, exact_adt, exact_optics, rel_err};
use thzchan::dielectrics::{complex_permittivity, refractive_index};
use thzchan::pathloss::adt_efficiency;
use thzchan::sweep::linspace;
use thzchan::{DebyeParameters, FrequencyPoint, MediumDatabase};

const OPTICS_TOL: f64 = 1e-12;
const ADT_TOL: f64 = 1e-9;

#[test]
fn bundled_file_matches_loader() {
    let db = MediumDatabase::bundled();
    let raw = bundled_parameters();
    assert_eq!(raw.len(), db.media().count());
    for (id, v) in raw {
        let m = &db.get_medium(&id).unwrap().medium;
        let d = &m.debye;
        assert_eq!([d.eps_inf(), d.eps_1(), d.eps_2(), d.tau_1(), d.tau_2()], [v[0], v[1], v[2], v[3], v[4]]);
        assert_eq!((m.band.min_hz, m.band.max_hz), (v[5], v[6]));
    }
}

#[test]
fn permittivity_and_index_match_exact_arithmetic() {
    for (id, v) in bundled_parameters() {
        let params = DebyeParameters::new(v[0], v[1], v[2], v[3], v[4]).unwrap();
        for f in linspace(v[5], v[6], 100) {
            let freq = FrequencyPoint::from_hz(f).unwrap();
            let eps = complex_permittivity(&params, &freq);
            let n = refractive_index(&eps).unwrap();
            let exact = exact_optics(v[0], v[1], v[2], v[3], v[4], f);
            for (name, got, want) in [
                ("eps_real", eps.eps_real, &exact.eps_real),
                ("eps_imag", eps.eps_imag, &exact.eps_imag),
                ("n_real", n.n_real, &exact.n_real),
                ("n_imag", n.n_imag, &exact.n_imag),
            ] {
                let e = rel_err(got, want);
                assert!(e <= OPTICS_TOL, "{id} at {f} Hz: {name} relative error {e:e}");
            }
        }
    }
}

#[test]
fn diffraction_series_matches_closed_form() {
    for p in [1e-6f64, 1e-5, 1e-4, -1e-5] {
        let got = adt_efficiency(p, 0.0, 1.0);
        let want = exact_adt(p.abs());
        let abs_err = (&common::Fixed::from_f64(got) - &want).abs().to_f64();
        assert!(abs_err <= ADT_TOL, "p = {p}: |Δ| = {abs_err:e}");
        assert!(rel_err(got, &want) <= 1e-6, "p = {p}: relative {:e}", rel_err(got, &want));
    }
}

#[test]
fn diffraction_is_continuous_across_threshold() {
    let t = thzchan::pathloss::ADT_SERIES_THRESHOLD;
    for p in [t * (1.0 - 1e-9), t, t * (1.0 + 1e-9), 3e-4, 1e-3, 1e-2] {
        let got = adt_efficiency(p, 0.0, 1.0);
        let e = rel_err(got, &exact_adt(p));
        assert!(e <= 1e-6, "p = {p}: relative {e:e}");
    }
}

#[test]
#[allow(clippy::excessive_precision)]
fn oracle_reproduces_reference_water_values() {
    let exact = exact_optics(3.48, 78.36, 4.93, 8.24e-12, 1.8e-13, 1e12);
    for (got, want) in [
        (&exact.eps_real, 4.143599877305953130),
        (&exact.eps_imag, 2.137308846037174532),
        (&exact.n_real, 2.098326719168053605),
        (&exact.n_imag, 0.5092888601458062246),
    ] {
        assert!(rel_err(want, got) < 1e-15, "{} vs {want}", got.to_f64());
    }
}
