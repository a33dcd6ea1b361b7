mod oracles;

use entshare::csscode::{parse_css, steane_css};
use entshare::purify::{estimate, exact_outcome, MaskPolicy, PauliChannelSpec};

const TOY2: &str = "2 2\n10\n01\n2 1\n11\n";
const TOY3: &str = "3 2\n110\n001\n3 1\n110\n";

fn channels() -> Vec<PauliChannelSpec> {
    vec![
        PauliChannelSpec::noiseless(),
        PauliChannelSpec::depolarizing(0.1).unwrap(),
        PauliChannelSpec::new(0.8, 0.12, 0.03, 0.05).unwrap(),
        PauliChannelSpec::new(0.6, 0.0, 0.0, 0.4).unwrap(),
    ]
}

#[test]
fn toy_codes_have_zero_threshold() {
    for text in [TOY2, TOY3] {
        let code = parse_css(text).unwrap();
        assert_eq!((code.m(), code.t()), (1, 0));
    }
}

#[test]
fn classical_matches_full_register_on_two_pair_code() {
    let code = parse_css(TOY2).unwrap();
    for spec in channels() {
        let (pass, fid) = oracles::dense_round_full(&code, &spec);
        let exact = exact_outcome(&code, &spec, MaskPolicy::Random).unwrap();
        assert!((pass - exact.pass_probability).abs() < 1e-9, "{spec:?}: {pass} vs {}", exact.pass_probability);
        assert!((fid - exact.conditional_fidelity).abs() < 1e-9, "{spec:?}: {fid} vs {}", exact.conditional_fidelity);
    }
}

#[test]
fn classical_matches_factored_register_on_three_pair_code() {
    let code = parse_css(TOY3).unwrap();
    for spec in channels() {
        let (pass, fid) = oracles::dense_round_factored(&code, &spec);
        let exact = exact_outcome(&code, &spec, MaskPolicy::Random).unwrap();
        assert!((pass - exact.pass_probability).abs() < 1e-9);
        assert!((fid - exact.conditional_fidelity).abs() < 1e-9, "{spec:?}: {fid} vs {}", exact.conditional_fidelity);
    }
}

#[test]
fn steane_exact_matches_brute_force() {
    let code = steane_css();
    for p in [0.0, 0.005, 0.01, 0.02, 0.1] {
        let spec = PauliChannelSpec::depolarizing(p).unwrap();
        let exact = exact_outcome(&code, &spec, MaskPolicy::Random).unwrap().conditional_fidelity;
        let brute = oracles::brute_force_conditional_fidelity(&code, &spec);
        assert!((exact - brute).abs() < 1e-12, "p={p}: {exact} vs {brute}");
    }
}

#[test]
fn monte_carlo_brackets_exact_value() {
    let code = steane_css();
    let spec = PauliChannelSpec::depolarizing(0.03).unwrap();
    let exact = exact_outcome(&code, &spec, MaskPolicy::Random).unwrap();
    let r = estimate(&code, &spec, 20_000, 11).unwrap();
    let (lo, hi) = (r.ci_low.unwrap(), r.ci_high.unwrap());
    assert!(lo <= exact.conditional_fidelity && exact.conditional_fidelity <= hi, "{lo} {hi} {exact:?}");
    assert!((r.pass_rate - exact.pass_probability).abs() < 0.01);
    assert!(0.0 <= lo && lo <= r.conditional_fidelity.unwrap() && r.conditional_fidelity.unwrap() <= hi && hi <= 1.0);
}

#[test]
fn zero_mask_agrees_with_random_mask_when_symmetric() {
    let code = steane_css();
    let spec = PauliChannelSpec::new(0.9, 0.03, 0.04, 0.03).unwrap();
    let trials = 20_000;
    let a = estimate(&code, &spec, trials, 2).unwrap();
    let b = entshare::purify::estimate_with(&code, &spec, MaskPolicy::Zero, trials, 2).unwrap();
    let exact = exact_outcome(&code, &spec, MaskPolicy::Zero).unwrap().conditional_fidelity;
    for r in [a, b] {
        assert!(r.ci_low.unwrap() <= exact && exact <= r.ci_high.unwrap());
    }
}

#[test]
fn heavy_noise_pass_rate_is_binomial_tail() {
    // bit flips at rate 2p/3 on each of the 7 check pairs, at most one allowed
    let q: f64 = 1.0 / 3.0;
    let tail = (1.0 - q).powi(7) + 7.0 * q * (1.0 - q).powi(6);
    let spec = PauliChannelSpec::depolarizing(0.5).unwrap();
    let exact = exact_outcome(&steane_css(), &spec, MaskPolicy::Random).unwrap();
    assert!((exact.pass_probability - tail).abs() < 1e-12);
    let r = estimate(&steane_css(), &spec, 20_000, 1).unwrap();
    assert!((r.pass_rate - tail).abs() < 0.015, "{} vs {tail}", r.pass_rate);
}
