// Surface kernels as image vectors and the moves acting on them.

use pmcg_torsion::surface_kernels::SurfaceKernel;
use pmcg_torsion::Prime;

fn main() {
    let p = Prime::new(7).unwrap();
    let sk = SurfaceKernel::new(p, 1, &[1, 3, 5], &[2, 4]).unwrap();
    println!("start   {sk}");
    for m in sk.moves() {
        let next = sk.apply_move(m).unwrap();
        assert!(next.is_valid());
        println!("{:<8}{next}", m.to_string());
    }

    // The first slot is marked, so it cannot be swapped.
    let bad = sk.apply_move(pmcg_torsion::surface_kernels::KernelMove::Rho(1));
    println!("rho_1 on a marked slot: {}", bad.unwrap_err());

    let orbit = sk.orbit(1_000_000).unwrap();
    println!("orbit size {}, normal form {}", orbit.len(), sk.normal_form());
    assert!(orbit.contains(&sk.normal_form()));

    let broken = SurfaceKernel::new(p, 0, &[1, 3, 5], &[2, 6]);
    println!("x=(1,3,5) d=(2,6): {}", broken.unwrap_err());
}
