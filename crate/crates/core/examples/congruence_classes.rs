// Canonical t-tuples and the closed-form class count.

use pmcg_torsion::tuple_classes::{are_congruent, count_classes, enumerate_classes, kernel_from_tuple, TTuple};
use pmcg_torsion::Prime;

fn main() {
    let p = Prime::new(7).unwrap();
    for k in 0..=3 {
        let classes = enumerate_classes(p, 3, k).unwrap();
        let tuples: Vec<String> = classes.iter().map(|c| c.canonical().to_string()).collect();
        println!("t = 3, k = {k}: {} classes {}", classes.len(), tuples.join(" "));
        if k > 0 {
            assert_eq!(classes.len() as u64, count_classes(p, 3, k).unwrap());
        }
    }

    let a = TTuple::new(p, 1, &[3, 2, 5]).unwrap();
    let b = TTuple::new(p, 1, &[1, 3, 4]).unwrap();
    println!("{a} ~ {b}: {}", are_congruent(&a, &b).unwrap());

    let c = &enumerate_classes(p, 3, 1).unwrap()[4];
    let sk = kernel_from_tuple(c.canonical(), 2).unwrap();
    println!("kernel for {}: {sk}", c.canonical());

    for t in 1..=6 {
        let row: Vec<String> = (1..=t)
            .map(|k| count_classes(Prime::new(11).unwrap(), t, k).unwrap().to_string())
            .collect();
        println!("p = 11, t = {t}, k = 1..{t}: {}", row.join(" "));
    }
}
