#![allow(dead_code)]

use cnot_core::{Angle, Complex, Op4, PauliAxis, PauliString, Pulse, PulseSequence, RotationAxis, Spin, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Grid = [[C64; 4]; 4];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn zero_grid() -> Grid {
    [[C64::new(0.0, 0.0); 4]; 4]
}

fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let mut out = zero_grid();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn pauli2(a: PauliAxis) -> [[C64; 2]; 2] {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    match a {
        PauliAxis::Identity => [[o, z], [z, o]],
        PauliAxis::X => [[z, o], [o, z]],
        PauliAxis::Y => [[z, -i], [i, z]],
        PauliAxis::Z => [[o, z], [z, -o]],
    }
}

/// Kronecker product written out independently of the library's tensor routine.
pub fn pauli_grid(p: PauliString) -> Grid {
    let (a, b) = (pauli2(p.spin1), pauli2(p.spin2));
    let mut out = zero_grid();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// 50-term Taylor series `Σ Xⁿ/n!`.
pub fn taylor_exp(x: &Grid) -> Grid {
    let mut sum = zero_grid();
    let mut term = zero_grid();
    for (i, row) in term.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    for n in 0..50 {
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += term[i][j];
            }
        }
        term = grid_mul(&term, x);
        let inv = 1.0 / (n + 1) as f64;
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z *= inv;
            }
        }
    }
    sum
}

pub fn scale_grid(g: &Grid, c: C64) -> Grid {
    g.map(|row| row.map(|z| z * c))
}

pub fn to_op(g: &Grid) -> Op4 {
    Op4::from_rows(*g)
}

/// `exp(i·θ·P)` by series.
pub fn oracle_exp_i_theta(theta: f64, p: PauliString) -> Op4 {
    to_op(&taylor_exp(&scale_grid(&pauli_grid(p), C64::new(0.0, theta))))
}

pub fn random_pauli(r: &mut impl Rng) -> PauliString {
    let axis = |r: &mut dyn rand::RngCore| PauliAxis::ALL[(r.next_u32() % 4) as usize];
    PauliString::new(axis(r), axis(r))
}

pub fn random_complex(r: &mut impl Rng) -> C64 {
    C64::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

/// Haar-ish random unitary via Gram–Schmidt on Gaussian columns.
pub fn random_unitary(r: &mut impl Rng) -> Op4 {
    let mut cols: Vec<[C64; 4]> = Vec::with_capacity(4);
    while cols.len() < 4 {
        let mut v: [C64; 4] = std::array::from_fn(|_| random_complex(r));
        for u in &cols {
            let dot: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for k in 0..4 {
                v[k] -= dot * u[k];
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            cols.push(v.map(|z| z / n));
        }
    }
    Op4::from_columns([cols[0], cols[1], cols[2], cols[3]])
}

pub fn random_2x2_unitary(r: &mut impl Rng) -> cnot_core::Mat2<f64> {
    // U = e^{iφ}·[[a, −b̄],[b, ā]] with |a|²+|b|² = 1
    let a = random_complex(r);
    let b = random_complex(r);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let ph = Complex::from_polar(1.0, r.gen_range(-3.0..3.0));
    cnot_core::Mat2::from_rows([[a * ph, -b.conj() * ph], [b * ph, a.conj() * ph]])
}

pub fn random_pulse(r: &mut impl Rng) -> Pulse {
    let angle = if r.gen_bool(0.5) {
        Angle::pi_frac(r.gen_range(-8..=8), [1, 2, 3, 4, 6, 8][r.gen_range(0..6)])
    } else {
        Angle::Radians(r.gen_range(-4.0..4.0))
    };
    match r.gen_range(0..7) {
        6 => Pulse::coupling(angle),
        k => Pulse::single(RotationAxis::ALL[k % 3], if k < 3 { Spin::One } else { Spin::Two }, angle),
    }
}

pub fn random_sequence(r: &mut impl Rng, max_len: usize) -> PulseSequence {
    let n = r.gen_range(0..=max_len);
    PulseSequence::new((0..n).map(|_| random_pulse(r)).collect())
}

pub fn random_state(r: &mut impl Rng) -> cnot_core::State {
    cnot_core::State::new(std::array::from_fn(|_| random_complex(r)))
}

/// Exact C_c1 and C_c2 matrices as plain rows.
pub fn c_c1() -> Op4 {
    Op4::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]])
}

pub fn c_c2() -> Op4 {
    Op4::from_real_rows([[1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.], [0., -1., 0., 0.]])
}

pub fn cnot_permutation() -> Op4 {
    Op4::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.]])
}
