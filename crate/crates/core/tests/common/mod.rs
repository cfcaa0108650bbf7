#![allow(dead_code)]

use qwalk::{CoinSpec, Complex64, ComplexMatrix, GraphBuilder, SlotRef, WalkGraph, WalkState};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random unitary by Gram-Schmidt on a matrix with uniform box entries.
pub fn random_unitary(d: usize, rng: &mut StdRng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            let p: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= p * y;
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

pub fn random_vector(n: usize, rng: &mut StdRng) -> Vec<Complex64> {
    (0..n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn normalized(v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

pub fn random_state(g: &WalkGraph, rng: &mut StdRng) -> WalkState {
    WalkState::from_amplitudes(normalized(random_vector(g.num_slots(), rng)))
}

/// A random multigraph with at most `max_slots` slots, random unitary coins,
/// a random partial pairing of slots into edges, and stubs elsewhere.
/// Returns the graph and the shift as an explicit slot permutation.
pub fn random_graph(seed: u64, max_slots: usize) -> (WalkGraph, Vec<usize>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut degrees = Vec::new();
    let mut total = 0;
    loop {
        let d = rng.gen_range(1..=6);
        if total + d > max_slots || (degrees.len() >= 2 && rng.gen_bool(0.15)) {
            break;
        }
        degrees.push(d);
        total += d;
    }
    if degrees.is_empty() {
        degrees.push(1);
        total = 1;
    }
    let mut offsets = vec![0; degrees.len()];
    for v in 1..degrees.len() {
        offsets[v] = offsets[v - 1] + degrees[v - 1];
    }
    let mut slots: Vec<(usize, usize)> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| (0..d).map(move |s| (v, s)))
        .collect();
    slots.shuffle(&mut rng);
    let n_edges = rng.gen_range(0..=slots.len() / 2);

    let mut b = GraphBuilder::new();
    for (v, &d) in degrees.iter().enumerate() {
        let coin = CoinSpec::custom(format!("U{v}"), random_unitary(d, &mut rng), 0.0).unwrap();
        b.add_vertex(&coin);
    }
    let mut perm: Vec<usize> = (0..total).collect();
    for e in 0..n_edges {
        let (a, z) = (slots[2 * e], slots[2 * e + 1]);
        b.connect(SlotRef::new(a.0, a.1), SlotRef::new(z.0, z.1));
        perm[offsets[a.0] + a.1] = offsets[z.0] + z.1;
        perm[offsets[z.0] + z.1] = offsets[a.0] + a.1;
    }
    b.stub_free_slots();
    (b.build().unwrap(), perm)
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
