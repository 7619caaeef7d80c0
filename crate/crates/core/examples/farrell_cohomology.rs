// p-primary Farrell cohomology of N_p^k from class counts and normalizers.

use pmcg_torsion::cohomology::{brown_assemble, dihedral_pattern, farrell_npk_report, ordinary_rank, vcd_npk};
use pmcg_torsion::Prime;

fn main() {
    for p in [3, 5, 7, 11] {
        let prime = Prime::new(p).unwrap();
        for k in 1..=4 {
            let r = farrell_npk_report(prime, k).unwrap();
            println!(
                "N_{p}^{k}: period {} ranks {:?}, vcd {} ({})",
                r.pattern.period,
                r.pattern.ranks,
                vcd_npk(prime, k),
                r.reason
            );
        }
        let vcd = vcd_npk(prime, 1);
        let above: Vec<u32> = (vcd..vcd + 4)
            .map(|i| ordinary_rank(prime, 1, i).unwrap().unwrap())
            .collect();
        println!("  ordinary ranks of N_{p}^1 in degrees {vcd}..{}: {above:?}", vcd + 3);
    }

    let p = Prime::new(5).unwrap();
    assert_eq!(
        brown_assemble(2, &dihedral_pattern(p)),
        farrell_npk_report(p, 2).unwrap().pattern
    );
}
