//! Momentum with the field-momentum terms against the time-integrated
//! sources, step by step with the low-level API.
//!
//! cargo run --release --example momentum_balance

use feec_pic::diagnostics::{momentum_report, MomentumReference};
use feec_pic::particles::sample_initial;
use feec_pic::{DeRhamComplex1d, HamiltonianSplitting, InitialCase, PropagatorId, Result, SimState};

fn main() -> Result<()> {
    let case = InitialCase::streaming_weibel();
    let complex = DeRhamComplex1d::new(3, 64, case.domain_length())?;
    let (particles, fields) = sample_initial(&case, 20_000, true, 1, &complex)?;
    let mut state = SimState { particles, fields, time: 0.0 };
    let mut hs = HamiltonianSplitting::new(&complex);
    let (p1, p2) = momentum_report(&state.particles, &state.fields, &complex);
    let mut reference = MomentumReference::new(p1, p2);
    let dt = 0.05;
    for n in 1..=400 {
        let before = state.fields.clone();
        hs.compose(PropagatorId::Strang, &mut state, dt)?;
        reference.update(&before, &state.fields, dt, &complex);
        if n % 50 == 0 {
            let (p1, p2) = momentum_report(&state.particles, &state.fields, &complex);
            println!(
                "t = {:>5.1}  P1 - ref = {:+.2e}  P2 - ref = {:+.2e}",
                state.time,
                p1 - reference.p1,
                p2 - reference.p2
            );
        }
    }
    Ok(())
}
