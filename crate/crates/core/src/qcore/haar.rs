use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{CMatrix, CVector, StateVector, C64};
use crate::Result;

/// The seeded generator used throughout the crate.
pub type SimRng = ChaCha8Rng;

/// Independent generator for task `index` under master `seed`. Results that
/// depend only on `(seed, index)` are unaffected by how tasks are scheduled.
pub fn substream(seed: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn ginibre<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re * scale, im * scale)
    })
}

/// Haar-distributed `d × d` unitary: QR of a complex Ginibre matrix, with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(d, d, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 { rkk / rkk.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..d {
            q[(row, k)] *= phase;
        }
    }
    q
}

/// Uniformly random pure state on the given subsystems.
pub fn haar_state<R: rand::Rng + ?Sized>(dims: Vec<usize>, rng: &mut R) -> Result<StateVector> {
    let total: usize = dims.iter().product();
    let g = ginibre(total, 1, rng);
    StateVector::normalized(CVector::from_column_slice(g.as_slice()), dims)
}
