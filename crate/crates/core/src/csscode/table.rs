use std::collections::HashMap;

use super::binary::{bits_of, pack, BinaryMatrix};
use crate::{Error, Result};

/// Minimum-weight coset leader for every reachable syndrome of `H`.
///
/// Leaders are found by enumerating error patterns in order of increasing
/// weight, breaking ties by the integer whose bit `i` is position `i`.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    n: usize,
    rows: usize,
    leaders: HashMap<u64, Vec<bool>>,
}

impl SyndromeTable {
    pub fn new(h: &BinaryMatrix) -> Result<Self> {
        let n = h.cols();
        if n > super::MAX_BLOCK_LEN || h.rows() > 64 {
            return Err(Error::InvalidCode(format!("syndrome table too large for a {}x{n} check matrix", h.rows())));
        }
        let reachable = 1usize << h.rank();
        let mut leaders = HashMap::with_capacity(reachable);
        let mut by_weight: Vec<u64> = (0..1u64 << n).collect();
        by_weight.sort_by_key(|x| (x.count_ones(), *x));
        for x in by_weight {
            if leaders.len() == reachable {
                break;
            }
            let e = bits_of(x, n);
            let s = pack(&h.mul_vec(&e)?);
            leaders.entry(s).or_insert(e);
        }
        Ok(Self { n, rows: h.rows(), leaders })
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn leader(&self, syndrome: &[bool]) -> Result<Vec<bool>> {
        if syndrome.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: syndrome.len() });
        }
        self.leaders
            .get(&pack(syndrome))
            .cloned()
            .ok_or_else(|| Error::InvalidParameter("syndrome outside the column space of H".into()))
    }
}
