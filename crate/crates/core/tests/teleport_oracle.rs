mod oracles;

use entshare::bounds::{lemma3_bound, lemma2_infidelity, theorem1_bound};
use entshare::qcore::{apply_channel, haar_state, max_abs_diff, overlap, schmidt_decompose, substream, CMatrix};
use entshare::states::{ghz, isotropic, IsotropicParams};
use entshare::teleport::{share_sequential, teleport_channel, teleport_fidelity, teleport_subsystems, Hop};

#[test]
fn channel_matches_measure_and_correct_protocol() {
    let mut rng = substream(40, 0);
    for d in 2..=4 {
        for f in [0.0, 1.0 / (d * d) as f64, 0.55, 1.0] {
            let resource = isotropic(&IsotropicParams::new(d, f).unwrap());
            let images = oracles::teleport_process(resource.entries(), d);
            let channel = teleport_channel(&resource).unwrap();
            for _ in 0..10 {
                let psi = haar_state(vec![d], &mut rng).unwrap();
                let lib = apply_channel(&channel, &psi.projector(), &[0]).unwrap();
                let reference = oracles::apply_process(&images, psi.projector().entries());
                let diff = max_abs_diff(lib.entries(), &reference);
                assert!(diff < 1e-10, "d={d} F={f}: {diff}");
                let col = CMatrix::from_column_slice(d, 1, psi.amplitudes().as_slice());
                assert!((oracles::expectation(&reference, &col) - teleport_fidelity(d, f)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn non_isotropic_resource_matches_protocol() {
    let mut rng = substream(41, 0);
    for d in 2..=3 {
        let resource = haar_state(vec![d, d], &mut rng).unwrap().projector();
        let images = oracles::teleport_process(resource.entries(), d);
        let channel = teleport_channel(&resource).unwrap();
        let psi = haar_state(vec![d], &mut rng).unwrap();
        let lib = apply_channel(&channel, &psi.projector(), &[0]).unwrap();
        let reference = oracles::apply_process(&images, psi.projector().entries());
        assert!(max_abs_diff(lib.entries(), &reference) < 1e-10);
    }
}

#[test]
fn ghz_two_one_qubit_hop() {
    for eps in [0.0, 0.05, 0.2] {
        let psi = ghz(2).unwrap();
        let out = teleport_subsystems(&psi, &[0], &isotropic(&IsotropicParams::new(2, 1.0 - eps).unwrap())).unwrap();
        assert!((overlap(&out, &psi).unwrap() - (1.0 - eps)).abs() < 1e-10);
    }
}

#[test]
fn ghz_three_one_qubit_hop_meets_theorem_bound() {
    let psi = ghz(3).unwrap();
    let schmidt = schmidt_decompose(&psi, &[0]).unwrap();
    for f in [0.7, 0.9, 0.99] {
        let out = teleport_subsystems(&psi, &[0], &isotropic(&IsotropicParams::new(2, f).unwrap())).unwrap();
        let sim = overlap(&out, &psi).unwrap();
        let bound = theorem1_bound(1, 1.0 - f, schmidt.schmidt_number, schmidt.max_pair_product());
        assert!(sim >= bound - 1e-9, "{sim} < {bound}");
    }
}

#[test]
fn sequential_hops_meet_product_of_hop_bounds() {
    let psi = ghz(3).unwrap();
    for eps in [0.02, 0.1, 0.2] {
        let resource = isotropic(&IsotropicParams::new(2, 1.0 - eps).unwrap());
        let hops = [Hop { targets: vec![1], resource: resource.clone() }, Hop { targets: vec![2], resource }];
        let sim = overlap(&share_sequential(&psi, &hops).unwrap(), &psi).unwrap();
        let mut product = 1.0;
        for t in [1usize, 2] {
            let s = schmidt_decompose(&psi, &[t]).unwrap();
            product *= lemma3_bound(lemma2_infidelity(2, eps), s.schmidt_number, s.max_pair_product());
        }
        assert!(sim >= product - 1e-9, "{sim} < {product}");
    }
}

#[test]
fn overlapping_hops_rejected() {
    let psi = ghz(3).unwrap();
    let r = isotropic(&IsotropicParams::new(2, 0.9).unwrap());
    let hops = [Hop { targets: vec![1], resource: r.clone() }, Hop { targets: vec![1], resource: r }];
    assert!(share_sequential(&psi, &hops).is_err());
}
