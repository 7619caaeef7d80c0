// Areas of NEC signatures and the index check behind the genus equation.

use pmcg_torsion::nec_presentations::{check_rh_index, standard_kernel, CanonicalPresentation, NecSignature};
use pmcg_torsion::riemann_hurwitz::solve;
use pmcg_torsion::Prime;

fn main() {
    let p = Prime::new(5).unwrap();
    let g = 9;
    let surface = NecSignature::surface(g).unwrap();
    println!("{surface}: area {}", surface.area_multiple());
    for s in solve(g, p) {
        let sig = NecSignature::cyclic(s.h, p, s.t as usize).unwrap();
        let ok = check_rh_index(&surface, &sig, p.get());
        println!("{sig}: area {}, index {} check {ok}", sig.area_multiple(), p);
        assert!(ok);
        if s.t > 0 {
            let pres = CanonicalPresentation::new(&sig, 0).unwrap();
            println!("  relators {}", pres.relators().join(", "));
            let sk = standard_kernel(s.h, s.t, p, 0).unwrap();
            println!("  kernel {sk}");
        }
    }
}
