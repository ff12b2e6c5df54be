use binpart::arith::Field;
use binpart::binpart::{binomial_part, cellular_decomposition, BinOptions};
use binpart::ideal::Ideal;
use binpart::poly::{PolyRing, TermOrder};
use std::time::Instant;

fn main() {
    let ring = PolyRing::new(Field::rationals(), vec!["x".into(), "y".into(), "z".into()]);
    let x = ring.var(0);
    let y = ring.var(1);
    let z = ring.var(2);
    // I = <x^3 z^4 + x^2 y z^2 + x y^2, x^2 y + x y^2 + y^3>
    let f1 = x.pow(3).mul(&z.pow(4)).add(&x.pow(2).mul(&y).mul(&z.pow(2))).add(&x.mul(&y.pow(2)));
    let f2 = x.pow(2).mul(&y).add(&x.mul(&y.pow(2))).add(&y.pow(3));
    let i = Ideal::new(&ring, vec![f1, f2]);
    let t0 = Instant::now();
    let comps = cellular_decomposition(&i).unwrap();
    println!("cellular: {} components in {:?}", comps.len(), t0.elapsed());
    for c in &comps {
        let names: Vec<_> = c.y_set.iter().map(|&v| ring.vars()[v].clone()).collect();
        println!("  Y = {{{}}} nil: {:?}", names.join(","), c.nilpotency);
        for g in c.ideal.groebner_basis(&TermOrder::DegRevLex).iter() {
            println!("    {g}");
        }
    }
    let t1 = Instant::now();
    let b = binomial_part(&i, &BinOptions::default()).unwrap();
    println!("binomial part in {:?}:", t1.elapsed());
    for g in b.ideal.groebner_basis(&TermOrder::DegRevLex).iter() {
        println!("  {g}");
    }
    println!("provenance:");
    for (g, tag) in &b.provenance {
        println!("  {g}   [{tag}]");
    }
}
