//! Sobol low-discrepancy sequence with Joe-Kuo direction numbers, generated
//! in Gray-code order.

use crate::error::{Error, Result};

const BITS: usize = 32;

/// `(s, a, m_1..m_s)` for dimensions 2 and up, from the Joe-Kuo table
/// `new-joe-kuo-6.21201`. Dimension 1 is the van der Corput sequence.
const JOE_KUO: &[(u32, u32, &[u32])] = &[
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
    (4, 4, &[1, 3, 5, 13]),
];

/// Number of supported dimensions.
pub const MAX_DIMENSION: usize = JOE_KUO.len() + 1;

#[derive(Debug, Clone)]
pub struct Sobol {
    directions: Vec<[u32; BITS]>,
    state: Vec<u32>,
    index: u64,
}

impl Sobol {
    /// Generator positioned at point `skip` (point 0 is the origin).
    pub fn new(dimension: usize, skip: u64) -> Result<Self> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(Error::SobolDimension {
                requested: dimension,
                max: MAX_DIMENSION,
            });
        }
        let directions: Vec<[u32; BITS]> = (0..dimension).map(direction_numbers).collect();
        let gray = skip ^ (skip >> 1);
        let state = directions
            .iter()
            .map(|v| {
                (0..BITS)
                    .filter(|&k| (gray >> k) & 1 == 1)
                    .fold(0u32, |acc, k| acc ^ v[k])
            })
            .collect();
        Ok(Self {
            directions,
            state,
            index: skip,
        })
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// Writes the current point into `out` and advances.
    pub fn next_into(&mut self, out: &mut [f64]) {
        const SCALE: f64 = 1.0 / (1u64 << BITS) as f64;
        for (o, s) in out.iter_mut().zip(&self.state) {
            *o = *s as f64 * SCALE;
        }
        // the bit that flips between gray(i) and gray(i + 1)
        let c = (!self.index).trailing_zeros() as usize;
        assert!(c < BITS, "sobol sequence exhausted");
        for (s, v) in self.state.iter_mut().zip(&self.directions) {
            *s ^= v[c];
        }
        self.index += 1;
    }
}

impl Iterator for Sobol {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        let mut p = vec![0.0; self.dimension()];
        self.next_into(&mut p);
        Some(p)
    }
}

/// `count` points of the `dimension`-dimensional sequence, starting at point
/// `skip`.
pub fn sobol_points(dimension: usize, count: usize, skip: u64) -> Result<Vec<Vec<f64>>> {
    Ok(Sobol::new(dimension, skip)?.take(count).collect())
}

fn direction_numbers(dim: usize) -> [u32; BITS] {
    let mut v = [0u32; BITS];
    if dim == 0 {
        for (k, vk) in v.iter_mut().enumerate() {
            *vk = 1 << (BITS - 1 - k);
        }
        return v;
    }
    let (s, a, m) = JOE_KUO[dim - 1];
    let s = s as usize;
    for k in 0..s.min(BITS) {
        v[k] = m[k] << (BITS - 1 - k);
    }
    for k in s..BITS {
        let mut x = v[k - s] ^ (v[k - s] >> s);
        for i in 1..s {
            if (a >> (s - 1 - i)) & 1 == 1 {
                x ^= v[k - i];
            }
        }
        v[k] = x;
    }
    v
}
