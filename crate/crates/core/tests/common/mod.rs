#![allow(dead_code)]

use pmcg_torsion::tuple_classes::TTuple;
use pmcg_torsion::Prime;

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Image of `betas` under scalar `a`, signs `eps` (bit i flips slot i) and
/// permutation `sigma` of the unmarked slots.
pub fn transform(p: u32, k: usize, betas: &[u32], a: u32, eps: u32, sigma: &[usize]) -> Vec<u32> {
    let p = p as u64;
    let scaled: Vec<u32> = betas
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let v = (a as u64 * b as u64) % p;
            if eps >> i & 1 == 1 {
                ((p - v) % p) as u32
            } else {
                v as u32
            }
        })
        .collect();
    let mut out = scaled[..k].to_vec();
    out.extend(sigma.iter().map(|&j| scaled[k + j]));
    out
}

/// Lexicographically least element of the congruence class, by trying
/// every scalar, sign pattern and permutation.
pub fn brute_min(p: u32, k: usize, betas: &[u32]) -> Vec<u32> {
    let t = betas.len();
    let perms = permutations(t - k);
    let mut best: Option<Vec<u32>> = None;
    for a in 1..p {
        for eps in 0..(1u32 << t) {
            for sigma in &perms {
                let img = transform(p, k, betas, a, eps, sigma);
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
    }
    best.unwrap()
}

/// All t-tuples with nonzero entries.
pub fn all_tuples(p: u32, t: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..p).map(move |b| {
                    let mut w = v.clone();
                    w.push(b);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn tuple(p: u32, k: usize, betas: &[u32]) -> TTuple {
    let vals: Vec<i64> = betas.iter().map(|&b| b as i64).collect();
    TTuple::new(Prime::new(p as i64).unwrap(), k, &vals).unwrap()
}
