mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{all_tuples, brute_min, tuple};
use pmcg_torsion::cohomology::{
    brown_assemble, cyclic_times_z2_pattern, dihedral_pattern, farrell_npk, farrell_npk_report, GradedPPattern,
};
use pmcg_torsion::liftability::{
    all_assignments, image_of_i, induced_by_words, is_liftable, kernel_witness, lift_scalar, SlideMap,
};
use pmcg_torsion::nec_presentations::standard_kernel;
use pmcg_torsion::riemann_hurwitz::{has_p_torsion, solve, solve_all, RhInstance};
use pmcg_torsion::surface_kernels::{enumerate_valid, orbit_partition, KernelMove, DEFAULT_BUDGET};
use pmcg_torsion::tuple_classes::{
    are_congruent, canonical_form, count_classes, enumerate_classes, kernel_from_tuple, phi_of,
};
use pmcg_torsion::Prime;

const PRIMES: [i64; 5] = [3, 5, 7, 11, 13];

fn prime(p: i64) -> Prime {
    Prime::new(p).unwrap()
}

fn solution_example_families() {
    for p in PRIMES {
        let q = prime(p);
        let g = p as u32;
        for (genus, expected) in [(g, (1, 2)), (g + 1, (2, 1)), (2 * g - 1, (1, 3))] {
            let all = solve_all(&RhInstance::new(genus, 0, q).unwrap());
            let branched: Vec<_> = all.iter().filter(|s| s.t > 0).map(|s| (s.h, s.t)).collect();
            assert_eq!(branched, vec![expected], "g={genus} p={p}");
            // Unbranched solutions may accompany them, always flagged.
            assert!(all.iter().all(|s| s.t > 0 || s.free_action));
        }
    }
}

fn torsion_cutoffs() {
    for p in PRIMES {
        let q = prime(p);
        let g = p as u32;
        for (genus, last) in [(g, 2), (g + 1, 1), (2 * g - 1, 3)] {
            for k in 0..=8 {
                let has = has_p_torsion(&RhInstance::new(genus, k, q).unwrap()).has_torsion;
                assert_eq!(has, k <= last, "g={genus} k={k} p={p}");
            }
        }
    }
}

fn multichoose(n: u64, r: u64) -> u64 {
    (1..=r).fold(1u64, |acc, i| acc * (n + i - 1) / i)
}

fn class_counts() {
    for p in PRIMES {
        let q = prime(p);
        let half = (p as u64 - 1) / 2;
        assert_eq!(count_classes(q, 2, 1).unwrap(), half);
        assert_eq!(count_classes(q, 2, 2).unwrap(), half);
        for t in 1..=5usize {
            for k in 1..=t {
                let n = enumerate_classes(q, t, k).unwrap().len() as u64;
                assert_eq!(n, count_classes(q, t, k).unwrap(), "p={p} t={t} k={k}");
                assert_eq!(n, half.pow(k as u32 - 1) * multichoose(half, (t - k) as u64));
            }
        }
    }
}

fn bijection_oracle() {
    for p in [3i64, 5, 7] {
        let q = prime(p);
        for h in 1..=2usize {
            for t in 1..=3usize {
                for k in 0..=t {
                    let orbits = orbit_partition(q, h, t, k, DEFAULT_BUDGET).unwrap();
                    // Class set from the independent brute-force minimiser.
                    let classes: BTreeSet<Vec<u32>> = all_tuples(p as u32, t)
                        .iter()
                        .map(|b| brute_min(p as u32, k, b))
                        .collect();
                    assert_eq!(orbits.len(), classes.len(), "p={p} h={h} t={t} k={k}");
                    let mut hit = BTreeSet::new();
                    for orbit in &orbits {
                        let c = canonical_form(&phi_of(&orbit[0]));
                        assert!(orbit.iter().all(|sk| canonical_form(&phi_of(sk)) == c));
                        hit.insert(c.values());
                    }
                    assert_eq!(hit, classes);
                }
            }
        }
    }
}

fn construction_round_trips() {
    for p in PRIMES {
        let q = prime(p);
        for g in 3..=60 {
            for s in solve(g, q).into_iter().filter(|s| s.t >= 1) {
                for k in 0..=s.t {
                    assert!(standard_kernel(s.h, s.t, q, k).unwrap().validate().is_ok());
                }
            }
        }
    }
    for p in [3i64, 5, 7] {
        let q = prime(p);
        for t in 1..=5 {
            for k in 0..=t {
                for c in enumerate_classes(q, t, k).unwrap() {
                    for h in 1..=3 {
                        let sk = kernel_from_tuple(c.canonical(), h).unwrap();
                        assert!(sk.validate().is_ok());
                        assert!(are_congruent(&phi_of(&sk), c.canonical()).unwrap());
                    }
                }
            }
        }
    }
}

fn liftability() {
    for p in [3i64, 5, 7, 11, 13] {
        let q = prime(p);
        for theta in all_assignments(q) {
            assert_eq!(lift_scalar(&theta, SlideMap::Identity), Some(q.one()));
            assert_eq!(lift_scalar(&theta, SlideMap::V1V2), Some(-q.one()));
            for m in [SlideMap::V1, SlideMap::V2] {
                assert!(!is_liftable(&theta, m));
                let w = kernel_witness(&theta, m).expect("witness");
                assert!(w.evaluate(&theta).is_zero());
                assert!(!w.evaluate(&induced_by_words(&theta, m)).is_zero());
            }
            assert!(is_liftable(&theta, SlideMap::Identity) && is_liftable(&theta, SlideMap::V1V2));
        }
        assert_eq!(image_of_i(q), BTreeSet::from([SlideMap::Identity, SlideMap::V1V2]));
    }
}

fn farrell_reproduction() {
    for p in PRIMES {
        let q = prime(p);
        let half = (p as u32 - 1) / 2;
        for k in 1..=2 {
            let r = farrell_npk_report(q, k).unwrap();
            let recount: u64 = r
                .witnesses
                .iter()
                .map(|s| count_classes(q, s.t as usize, k as usize).unwrap())
                .sum();
            assert_eq!(r.class_count, recount);
            for i in 0..16i64 {
                let want = if i % 4 == 0 { half } else { 0 };
                assert_eq!(r.pattern.rank_at(i), want, "p={p} k={k} i={i}");
            }
        }
        for k in 3..=6 {
            assert!(farrell_npk(q, k).unwrap().is_zero(), "p={p} k={k}");
        }
    }
}

fn property_suites() {
    // Congruence: equivalence laws, checked against the brute-force minimiser.
    for p in [3u32, 5, 7] {
        for t in 1..=3 {
            let tuples = all_tuples(p, t);
            for k in 0..=t {
                let mins: Vec<_> = tuples.iter().map(|b| brute_min(p, k, b)).collect();
                let ts: Vec<_> = tuples.iter().map(|b| tuple(p, k, b)).collect();
                for i in 0..ts.len() {
                    assert_eq!(canonical_form(&ts[i]).values(), mins[i]);
                    for j in 0..ts.len() {
                        assert_eq!(are_congruent(&ts[i], &ts[j]).unwrap(), mins[i] == mins[j]);
                    }
                }
            }
        }
    }
    // Moves: soundness, involutions, Gamma = Phi(t), normal forms.
    for p in [3i64, 5, 7] {
        let q = prime(p);
        for h in 1..=2 {
            for t in 1..=3 {
                for k in 0..=t {
                    for sk in enumerate_valid(q, h, t, k, DEFAULT_BUDGET).unwrap() {
                        for m in sk.moves() {
                            let next = sk.apply_move(m).unwrap();
                            assert!(next.is_valid());
                            if !matches!(m, KernelMove::Psi(_)) {
                                assert_eq!(next.apply_move(m).unwrap(), sk, "{m} on {sk}");
                            }
                        }
                        assert_eq!(
                            sk.apply_move(KernelMove::Gamma).unwrap(),
                            sk.apply_move(KernelMove::Phi(t)).unwrap()
                        );
                        let nf = sk.normal_form();
                        assert_eq!(nf.normal_form(), nf);
                    }
                    for orbit in orbit_partition(q, h, t, k, DEFAULT_BUDGET).unwrap() {
                        let members: BTreeSet<_> = orbit.iter().cloned().collect();
                        assert!(orbit.iter().all(|sk| members.contains(&sk.normal_form())));
                    }
                }
            }
        }
    }
    // Patterns: periodicity and additivity of Brown's formula.
    for p in PRIMES {
        let q = prime(p);
        let pats: [GradedPPattern; 3] = [dihedral_pattern(q), cyclic_times_z2_pattern(q), GradedPPattern::zero(q)];
        for pat in &pats {
            for a in 0..4u64 {
                for b in 0..4u64 {
                    let s = brown_assemble(a + b, pat);
                    for i in -12..12i64 {
                        assert_eq!(s.rank_at(i), s.rank_at(i + pat.period as i64));
                        assert_eq!(
                            s.rank_at(i),
                            brown_assemble(a, pat).rank_at(i) + brown_assemble(b, pat).rank_at(i)
                        );
                    }
                }
            }
        }
    }
}

fn main() {
    let criteria: [(&str, u64, fn()); 8] = [
        ("genus equation example families", 1, solution_example_families),
        ("torsion cutoffs", 1, torsion_cutoffs),
        ("class counts", 5, class_counts),
        ("orbit/class bijection", 60, bijection_oracle),
        ("construction round trips", 10, construction_round_trips),
        ("liftability of slides", 1, liftability),
        ("Farrell cohomology of N_p^k", 1, farrell_reproduction),
        ("property suites", 60, property_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (i, (name, secs, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(secs);
        let status = match outcome {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => "FAIL (time limit)".to_string(),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        println!(
            "criterion {} {name}: {status} in {:.3}s (limit {secs}s)",
            i + 1,
            elapsed.as_secs_f64()
        );
        if !status.starts_with("PASS") {
            failed.push(i + 1);
        }
    }
    let _ = panic::take_hook();
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
