//! Slower cross-module property checks that do not belong to a single
//! module's unit tests.

use std::f64::consts::{FRAC_PI_2, PI};

use uhlmann_core::analysis::{
    circular_distance, transitions_1d, PhaseTarget, SweepAxis, SweepFixed,
};
use uhlmann_core::spinmodel::ModelParams;
use uhlmann_core::subsystems::{reduce, subsystem_phase_analytic, subsystem_phase_ode, Subsystem};
use uhlmann_core::thermal::gibbs_state;

/// The analytic reduced-spin phase against the path-ordered route on a
/// 10x10x5 grid, skipping transition neighbourhoods where the argument is
/// ill-conditioned.
#[test]
fn analytic_and_path_ordered_reduced_phases_agree_on_grid() {
    let mut checked = 0;
    for i in 0..10 {
        let g = 0.1 + (2.0 - 0.1) * i as f64 / 9.0;
        for j in 0..10 {
            let theta = (j as f64 + 0.5) * PI / 10.0;
            for k in 0..5 {
                let t = 0.1 + (1.5 - 0.1) * k as f64 / 4.0;
                let p = ModelParams::new(g, theta).unwrap();
                let ens = gibbs_state(&p, t).unwrap();
                for which in [Subsystem::A, Subsystem::B] {
                    let q = reduce(&ens, which);
                    let analytic = subsystem_phase_analytic(&q);
                    if analytic.trace_value.norm() < 1e-3 || q.c.abs() < 1e-12 {
                        continue;
                    }
                    let ode = subsystem_phase_ode(&q, 2048).unwrap();
                    let d = circular_distance(analytic.phase, ode.phase);
                    assert!(
                        d < 1e-6,
                        "{which} at g={g} theta={theta} T={t}: |dPhi| = {d:.2e}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 800, "only {checked} grid points checked");
}

/// No driven-spin transitions exist once the coupling exceeds its critical
/// value, however the temperature is swept.
#[test]
fn driven_spin_transitions_vanish_beyond_critical_coupling() {
    for g in [1.2, 1.3, 1.5] {
        let set = transitions_1d(
            PhaseTarget::Reduced(Subsystem::A),
            SweepAxis::Temperature,
            SweepFixed {
                g,
                theta: FRAC_PI_2,
                temperature: 0.0,
            },
            (0.01, 1.5),
            600,
        )
        .unwrap();
        assert!(!set.found, "unexpected roots at g={g}");
    }
}
