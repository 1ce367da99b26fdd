#![allow(dead_code)]

use braidgate::matrix::DenseMatrix;
use braidgate::qstate::{tensor_product, PureState};
use braidgate::random;
use braidgate::{State, C64};
use rand::seq::SliceRandom;
use rand::Rng;

/// Applies a 2×2 matrix to qubit `j` (1-based) by direct index pairing.
pub fn apply_local(s: &State, j: usize, u: &DenseMatrix<f64>) -> State {
    let m = s.qubit_count();
    let bit = 1usize << (m - j);
    let mut out = s.amplitudes().to_vec();
    let a = s.amplitudes();
    for i in 0..s.dim() {
        if i & bit == 0 {
            let (x, y) = (a[i], a[i | bit]);
            out[i] = u[(0, 0)] * x + u[(0, 1)] * y;
            out[i | bit] = u[(1, 0)] * x + u[(1, 1)] * y;
        }
    }
    PureState::new(m, out).unwrap()
}

pub fn random_local_unitaries<R: Rng>(rng: &mut R, s: &State) -> State {
    (1..=s.qubit_count()).fold(s.clone(), |acc, j| {
        apply_local(&acc, j, &random::single_qubit_unitary(rng))
    })
}

/// A test instance with its separability ground truth per qubit.
pub struct Instance {
    pub kind: &'static str,
    pub state: State,
    pub separable: Vec<bool>,
}

impl Instance {
    pub fn fully_separable(&self) -> bool {
        self.separable.iter().all(|&b| b)
    }
}

fn random_scale<R: Rng>(rng: &mut R) -> C64 {
    let exp: f64 = rng.gen_range(-3.0..=3.0);
    C64::from_polar(10f64.powf(exp), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Block product: each block is either one random qubit or a random generic
/// state on ≥ 2 qubits, then the qubits are shuffled.
pub fn partial_product<R: Rng>(rng: &mut R, m: usize) -> Instance {
    let mut blocks: Vec<(State, bool)> = Vec::new();
    let mut left = m;
    while left > 0 {
        let size = if left >= 2 && rng.gen_bool(0.5) {
            rng.gen_range(2..=left)
        } else {
            1
        };
        let s = random::state::<f64, _>(rng, size).unwrap();
        blocks.push((s, size == 1));
        left -= size;
    }
    let mut sep = Vec::new();
    let mut state: Option<State> = None;
    for (b, single) in blocks {
        sep.extend(std::iter::repeat_n(single, b.qubit_count()));
        state = Some(match state {
            None => b,
            Some(acc) => tensor_product(&acc, &b).unwrap(),
        });
    }
    let state = state.unwrap();
    let mut order: Vec<usize> = (1..=m).collect();
    order.shuffle(rng);
    let state = state.permute_qubits(&order).unwrap();
    let separable = order.iter().map(|&q| sep[q - 1]).collect();
    Instance {
        kind: "partial",
        state: state.scale(random_scale(rng)),
        separable,
    }
}

/// Mixed corpus of products, GHZ, W, partial products and generic states.
pub fn mixed_instance<R: Rng>(rng: &mut R, k: usize, max_qubits: usize) -> Instance {
    let m = rng.gen_range(2..=max_qubits);
    let lambda = random_scale(rng);
    match k % 5 {
        0 => {
            let factors: Vec<State> = (0..m).map(|_| random::qubit(rng)).collect();
            Instance {
                kind: "product",
                state: braidgate::qstate::product_state(&factors)
                    .unwrap()
                    .scale(lambda),
                separable: vec![true; m],
            }
        }
        1 => Instance {
            kind: "ghz",
            state: random_local_unitaries(rng, &State::ghz(m).unwrap()).scale(lambda),
            separable: vec![false; m],
        },
        2 => {
            let m = m.max(3);
            Instance {
                kind: "w",
                state: random_local_unitaries(rng, &State::w(m).unwrap()).scale(lambda),
                separable: vec![false; m],
            }
        }
        3 => partial_product(rng, m),
        _ => Instance {
            kind: "generic",
            state: random::state(rng, m).unwrap().scale(lambda),
            separable: vec![false; m],
        },
    }
}
