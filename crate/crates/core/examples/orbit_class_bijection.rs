// Move-orbits of surface kernels correspond one to one with t-tuple classes.

use pmcg_torsion::surface_kernels::{orbit_partition, DEFAULT_BUDGET};
use pmcg_torsion::tuple_classes::{canonical_form, count_classes, phi_of};
use pmcg_torsion::Prime;

fn main() {
    for (p, h, t, k) in [(5, 1, 2, 1), (5, 2, 2, 2), (7, 1, 3, 1), (7, 2, 3, 2), (3, 1, 3, 0)] {
        let prime = Prime::new(p).unwrap();
        let orbits = orbit_partition(prime, h, t, k, DEFAULT_BUDGET).unwrap();
        println!("p = {p}, h = {h}, t = {t}, k = {k}: {} orbits", orbits.len());
        for orbit in &orbits {
            let class = canonical_form(&phi_of(&orbit[0]));
            assert!(orbit.iter().all(|sk| canonical_form(&phi_of(sk)) == class));
            println!("  {:>5} kernels -> {class}", orbit.len());
        }
        if k > 0 {
            assert_eq!(orbits.len() as u64, count_classes(prime, t, k).unwrap());
        }
    }
}
