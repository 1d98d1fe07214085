use markov_jscd::channel::{sigma_from_eso_n0, transmit};
use markov_jscd::decoder::{decode_frame, ChannelState, DecoderMode, ErrorLlrForm};
use markov_jscd::ldpc::{derive_check_distribution, lambda_a, peg_construct};
use markov_jscd::rng::seeded;
use markov_jscd::source::{apply_correlation, generate_markov, CorrelationParams, MarkovParams};
use markov_jscd::{ChannelObservation, DecoderConfig, LlrVector, MarkovTrellis, SystematicCode};
use proptest::prelude::*;
use rand::Rng;

const CLAMP: f64 = 30.0;

fn code(n: usize, seed: u64) -> SystematicCode {
    let lambda = lambda_a();
    let rho = derive_check_distribution(&lambda, 0.5).unwrap();
    SystematicCode::new(peg_construct(n, n / 2, &lambda, &rho, &mut seeded(seed)).unwrap())
}

struct Setup {
    codes: [SystematicCode; 2],
    trellis: MarkovTrellis,
}

fn setup(n: usize) -> Setup {
    let a = code(n, 1);
    let mut s = 2;
    let b = loop {
        let b = code(n, s);
        if b.k() == a.k() {
            break b;
        }
        s += 1;
    };
    let trellis = MarkovTrellis::new(&MarkovParams::symmetric(0.1).unwrap(), a.k()).unwrap();
    Setup { codes: [a, b], trellis }
}

fn observations(setup: &Setup, snr: f64, seed: u64) -> [ChannelObservation; 2] {
    let mut rng = seeded(seed);
    let k = setup.codes[0].k();
    let s1 = generate_markov(&MarkovParams::symmetric(0.1).unwrap(), k, &mut rng).unwrap();
    let s2 = apply_correlation(&s1, &CorrelationParams::new(0.01).unwrap(), &mut rng);
    let sigma = sigma_from_eso_n0(snr, setup.codes[0].rate()).unwrap();
    [
        transmit(&setup.codes[0].encode(&s1).unwrap(), sigma, &mut rng),
        transmit(&setup.codes[1].encode(&s2).unwrap(), sigma, &mut rng),
    ]
}

fn decode(setup: &Setup, obs: &[ChannelObservation; 2], config: &DecoderConfig) -> markov_jscd::DecodeResult {
    decode_frame(&obs[0], &obs[1], &setup.codes[0], &setup.codes[1], &setup.trellis, config).unwrap()
}

fn config(mode: DecoderMode, max_global: usize) -> DecoderConfig {
    DecoderConfig {
        max_local: 20,
        max_global,
        ..DecoderConfig::with_mode(mode)
    }
}

#[test]
fn near_noiseless_returns_sources_in_one_global_iteration() {
    let setup = setup(128);
    let mut rng = seeded(3);
    let k = setup.codes[0].k();
    let s1 = generate_markov(&MarkovParams::symmetric(0.1).unwrap(), k, &mut rng).unwrap();
    let s2 = apply_correlation(&s1, &CorrelationParams::new(0.01).unwrap(), &mut rng);
    let sigma = sigma_from_eso_n0(40.0, setup.codes[0].rate()).unwrap();
    let obs = [
        transmit(&setup.codes[0].encode(&s1).unwrap(), sigma, &mut rng),
        transmit(&setup.codes[1].encode(&s2).unwrap(), sigma, &mut rng),
    ];
    for mode in DecoderMode::ALL {
        let r = decode(&setup, &obs, &DecoderConfig::with_mode(mode));
        assert_eq!(r.bits[0], s1, "{mode}");
        assert_eq!(r.bits[1], s2, "{mode}");
        assert_eq!(r.success, [true, true]);
        assert_eq!(r.global_iterations, 1);
        assert_eq!(r.local_iterations, [1, 1]);
    }
}

#[test]
fn mismatched_inputs_are_rejected() {
    let setup = setup(64);
    let obs = observations(&setup, 0.0, 1);
    let other = code(80, 1);
    let cfg = DecoderConfig::default();
    assert!(decode_frame(&obs[0], &obs[1], &setup.codes[0], &other, &setup.trellis, &cfg).is_err());
    let short = MarkovTrellis::new(&MarkovParams::symmetric(0.1).unwrap(), 3).unwrap();
    assert!(decode_frame(&obs[0], &obs[1], &setup.codes[0], &setup.codes[1], &short, &cfg).is_err());
    let louder = ChannelObservation {
        sigma2: obs[1].sigma2 * 2.0,
        ..obs[1].clone()
    };
    assert!(decode_frame(&obs[0], &louder, &setup.codes[0], &setup.codes[1], &setup.trellis, &cfg).is_err());
    let zero_iterations = DecoderConfig {
        max_local: 0,
        ..cfg
    };
    assert!(decode_frame(&obs[0], &obs[1], &setup.codes[0], &setup.codes[1], &setup.trellis, &zero_iterations).is_err());
}

#[test]
fn trace_rows_follow_the_schedule() {
    let setup = setup(128);
    let obs = observations(&setup, -2.0, 8);
    let cfg = DecoderConfig {
        trace: true,
        ..config(DecoderMode::Jscd, 3)
    };
    let r = decode(&setup, &obs, &cfg);
    let total: usize = r.local_iterations.iter().sum();
    assert_eq!(r.trace.len(), total);
    assert!(r.trace.iter().all(|t| t.global >= 1 && t.global <= 3 && (t.channel == 1 || t.channel == 2)));
    assert!(r.trace.iter().all(|t| t.mean_abs_llr.is_finite()));
    for row in &r.trace {
        assert_eq!(row.to_csv().split(',').count(), 5);
    }
}

#[test]
fn error_llr_forms_change_only_the_cross_exchange() {
    let setup = setup(128);
    let obs = observations(&setup, -1.0, 21);
    for form in [ErrorLlrForm::LogOdds, ErrorLlrForm::CrossoverPrior] {
        let base = decode(&setup, &obs, &config(DecoderMode::SpBcjr, 4));
        let alt = decode(
            &setup,
            &obs,
            &DecoderConfig {
                error_llr: form,
                ..config(DecoderMode::SpBcjr, 4)
            },
        );
        assert_eq!(base, alt);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Modes share one code path: without the exchange, one global round of
    /// the cross modes equals the modes without it.
    #[test]
    fn mode_degeneration(seed in any::<u64>(), snr in -3.0f64..1.0) {
        let setup = setup(96);
        let obs = observations(&setup, snr, seed);
        prop_assert_eq!(decode(&setup, &obs, &config(DecoderMode::SpCross, 1)), decode(&setup, &obs, &config(DecoderMode::Sp, 1)));
        prop_assert_eq!(decode(&setup, &obs, &config(DecoderMode::Jscd, 1)), decode(&setup, &obs, &config(DecoderMode::SpBcjr, 1)));
        // Modes without the exchange ignore the global cap.
        prop_assert_eq!(decode(&setup, &obs, &config(DecoderMode::Sp, 7)), decode(&setup, &obs, &config(DecoderMode::Sp, 1)));
    }

    /// A reported success always comes with a zero syndrome, and a decode is
    /// a pure function of its inputs.
    #[test]
    fn syndrome_soundness_and_determinism(seed in any::<u64>(), snr in -3.0f64..0.5, mode_index in 0usize..4) {
        let setup = setup(96);
        let obs = observations(&setup, snr, seed);
        let cfg = config(DecoderMode::ALL[mode_index], 4);
        let r = decode(&setup, &obs, &cfg);
        prop_assert_eq!(&r, &decode(&setup, &obs, &cfg));
        for q in 0..2 {
            prop_assert!(r.local_iterations[q] >= 1);
            if r.success[q] {
                let word = setup.codes[q].encode(&r.bits[q]).unwrap();
                prop_assert!(setup.codes[q].graph().is_codeword(&word));
            }
        }
    }

    /// Stored messages stay finite and within the clamp after every step.
    #[test]
    fn messages_stay_bounded(seed in any::<u64>(), snr in -6.0f64..4.0, update in proptest::collection::vec(-80.0f64..80.0, 48)) {
        let setup = setup(96);
        let obs = observations(&setup, snr, seed);
        let code = &setup.codes[0];
        let llr = markov_jscd::channel::channel_llr(&obs[0]).unwrap();
        let mut state = ChannelState::new(code, llr, CLAMP).unwrap();
        let k = code.k();
        let up: Vec<f64> = update.iter().cycle().take(k).map(|x| x.clamp(-CLAMP, CLAMP)).collect();
        state.set_correlation_update(&up).unwrap();
        let bounded = |xs: &[f64]| xs.iter().all(|x| x.is_finite() && x.abs() <= CLAMP);
        for _ in 0..10 {
            state.update_variables();
            prop_assert!(bounded(state.var_to_check()));
            state.update_checks();
            prop_assert!(bounded(state.check_to_var()));
            state.update_markov(&setup.trellis).unwrap();
            prop_assert!(bounded(state.markov_extrinsic()));
        }
    }

    /// The systematic variable-to-check message ignores the target check's
    /// own message.
    #[test]
    fn variable_message_excludes_target_check(seed in any::<u64>(), bump in -25.0f64..25.0) {
        let setup = setup(96);
        let code = &setup.codes[0];
        let mut rng = seeded(seed);
        let llr: LlrVector = (0..code.n()).map(|_| rng.random_range(-4.0..4.0)).collect();
        let mut state = ChannelState::new(code, llr, CLAMP).unwrap();
        for _ in 0..3 {
            state.update_variables();
            state.update_checks();
            state.update_markov(&setup.trellis).unwrap();
        }
        let v = code.info_positions()[rng.random_range(0..code.k())];
        let g = code.graph();
        let edges = g.var_edges(v).to_vec();
        let e = edges[rng.random_range(0..edges.len())];
        let c = g.edge_check(e);
        let before = state.vc_update_systematic(v, c);
        state.check_to_var_mut()[e] += bump;
        prop_assert_eq!(state.vc_update_systematic(v, c), before);
        // Any other check's message does move it (unless saturated).
        if let Some(&other) = edges.iter().find(|&&x| x != e) {
            state.check_to_var_mut()[other] += 1.0;
            let moved = state.vc_update_systematic(v, c);
            prop_assert!(moved != before || before.abs() == CLAMP);
        }
    }

    /// The LLR handed to the Markov decoder ignores the Markov extrinsic.
    #[test]
    fn markov_input_excludes_markov_extrinsic(seed in any::<u64>(), bumps in proptest::collection::vec(-25.0f64..25.0, 48)) {
        let setup = setup(96);
        let code = &setup.codes[0];
        let mut rng = seeded(seed);
        let llr: LlrVector = (0..code.n()).map(|_| rng.random_range(-4.0..4.0)).collect();
        let mut state = ChannelState::new(code, llr, CLAMP).unwrap();
        state.update_variables();
        state.update_checks();
        let before = state.to_markov_llr();
        for (m, b) in state.markov_extrinsic_mut().iter_mut().zip(bumps.iter().cycle()) {
            *m += b;
        }
        prop_assert_eq!(state.to_markov_llr(), before);
    }
}
