use binpart::arith::Field;
use binpart::ideal::Ideal;
use binpart::poly::{PolyRing, TermOrder};

fn main() {
    let ring = PolyRing::new(Field::rationals(), vec!["x".into(), "y".into(), "z".into()]);
    let x = ring.var(0);
    let y = ring.var(1);
    let z = ring.var(2);
    // published Bin(I)
    let pub_gens = vec![
        y.pow(5).mul(&z.pow(6)).sub(&y.pow(5)),
        x.pow(4).mul(&z.pow(6)).sub(&x.mul(&y.pow(3))),
        x.pow(5).mul(&z.pow(4)).sub(&x.pow(2).mul(&y.pow(3)).mul(&z.pow(4))),
        x.pow(3).mul(&y).sub(&y.pow(4)),
    ];
    let pub_ideal = Ideal::new(&ring, pub_gens);
    println!("reduced GB of the published ideal:");
    for g in pub_ideal.groebner_basis(&TermOrder::DegRevLex).iter() {
        println!("  {g}");
    }
    let probe = x.pow(2).mul(&y.pow(3)).mul(&z.pow(6)).sub(&x.pow(2).mul(&y.pow(3)));
    println!("x^2y^3(z^6-1) in published ideal: {}", pub_ideal.contains(&probe));
    let probe2 = x.mul(&y.pow(4)).mul(&z.pow(6)).sub(&x.mul(&y.pow(4)));
    println!("x*y^4(z^6-1) in published ideal: {}", pub_ideal.contains(&probe2));
    // is the probe really in I?
    let f1 = x.pow(3).mul(&z.pow(4)).add(&x.pow(2).mul(&y).mul(&z.pow(2))).add(&x.mul(&y.pow(2)));
    let f2 = x.pow(2).mul(&y).add(&x.mul(&y.pow(2))).add(&y.pow(3));
    let i = Ideal::new(&ring, vec![f1, f2]);
    println!("x^2y^3(z^6-1) in I: {}", i.contains(&probe));
}
