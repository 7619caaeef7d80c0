// Which punctured non-orientable mapping class groups have p-torsion?

use pmcg_torsion::riemann_hurwitz::{has_p_torsion, RhInstance};
use pmcg_torsion::Prime;

fn main() {
    for p in [3, 5, 7] {
        let prime = Prime::new(p).unwrap();
        println!("p = {p}");
        for g in 3..=12 {
            let row: String = (0..=4)
                .map(|k| {
                    let r = has_p_torsion(&RhInstance::new(g, k, prime).unwrap());
                    if r.has_torsion {
                        " yes"
                    } else {
                        "  no"
                    }
                })
                .collect();
            println!("  g = {g:>2} k = 0..4:{row}");
        }
    }

    let p5 = Prime::new(5).unwrap();
    let r = has_p_torsion(&RhInstance::new(9, 3, p5).unwrap());
    assert!(r.has_torsion);
    println!(
        "N_9^3, p = 5 witnessed by {:?}",
        r.witnesses.iter().map(|s| (s.h, s.t)).collect::<Vec<_>>()
    );
    assert!(!has_p_torsion(&RhInstance::new(5, 3, p5).unwrap()).has_torsion);

    // t = 0 solutions are free actions, reported but never witnesses.
    let r = has_p_torsion(&RhInstance::new(8, 0, Prime::new(3).unwrap()).unwrap());
    println!("N_8, p = 3: witnesses {:?}, free {:?}", r.witnesses, r.free_solutions);
}
