// Which slide homeomorphisms of the once-punctured Klein bottle lift to N_p^2.

use pmcg_torsion::liftability::{
    all_assignments, induced, is_liftable, kernel_witness, liftability_report, Generator, SlideMap, Word,
};
use pmcg_torsion::Prime;

fn main() {
    let p = Prime::new(5).unwrap();
    for m in SlideMap::ALL {
        let images: Vec<String> = [Generator::X1, Generator::X2, Generator::D]
            .into_iter()
            .map(|g| format!("{g} -> {}", m.generator_image(g)))
            .collect();
        println!("{m}: {}", images.join(", "));
        let rel = Word::relator().apply_slide(m);
        println!("  relator goes to {rel}");
    }

    let theta = all_assignments(p).next().unwrap();
    for m in SlideMap::ALL {
        let lifted = is_liftable(&theta, m);
        print!("{theta} under {m}: {} ", induced(&theta, m));
        match kernel_witness(&theta, m) {
            Some(w) if !lifted => println!("does not lift, witness {w}"),
            _ => println!("lifts"),
        }
    }

    let report = liftability_report(p);
    println!("{report:?}");
    assert_eq!(report.image_order, 2);
}
