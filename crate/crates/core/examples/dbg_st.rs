use binpart::arith::Field;
use binpart::ideal::{syzygy_pair_mod, Ideal};
use binpart::binpart::st_binomial_part;
use binpart::poly::{PolyRing, TermOrder};
use binpart::unitchar;

fn main() {
    let ring = PolyRing::new(Field::rationals(), vec!["x".into(), "y".into(), "z".into()]);
    let x = ring.var(0);
    let y = ring.var(1);
    let z = ring.var(2);
    // Mon-example ideal: <x^4, y^4, x^2 z^4 + x y z^2 + y^2, x^3 z^2 - x^3 - y^3>
    let i = Ideal::new(&ring, vec![
        x.pow(4),
        y.pow(4),
        x.pow(2).mul(&z.pow(4)).add(&x.mul(&y).mul(&z.pow(2))).add(&y.pow(2)),
        x.pow(3).mul(&z.pow(2)).sub(&x.pow(3)).sub(&y.pow(3)),
    ]);
    let s = x.pow(3);
    let t = y.pow(3);
    let syz = syzygy_pair_mod(&s, &t, &i, &[2]).unwrap();
    println!("syzygy pairs:");
    for (f, g) in &syz.pairs {
        println!("  ({f}, {g})");
    }
    // membership of the published generators (z^2-1, -1) and (1, z^4+z^2)
    let ext = syz.ring.clone();
    let ze = ext.var(2);
    let a1 = ze.pow(2).sub(&ext.one());
    let b1 = ext.one().neg();
    println!("contains (z^2-1, -1): {}", syz.contains_pair(&a1, &b1));
    let a2 = ext.one();
    let b2 = ze.pow(4).add(&ze.pow(2));
    println!("contains (1, z^4+z^2): {}", syz.contains_pair(&a2, &b2));
    // (I : t) contracted to Q[z]_z
    let text = t.map_ring(&ext).unwrap();
    let et = syz.ideal.quotient_elem(&text);
    let et_sub = et.eliminate(&[0, 1]);
    println!("(IQ : t) ∩ K[z, zloc]:");
    for g in et_sub.groebner_basis(&TermOrder::DegRevLex).iter() {
        println!("  {g}");
    }
    // unit lattice of (z, -h) mod <z^6 - z^2 + 1>
    let h = ze.pow(4).add(&ze.pow(2));
    let f = vec![ze.clone(), h.neg()];
    let cl = unitchar::unit_lattice(&et_sub, &f).unwrap();
    println!("unit lattice of (z, -h):");
    for (row, v) in cl.lattice.basis().iter().zip(&cl.values) {
        println!("  {:?} -> {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>(), v);
    }
    // Bin_{s,t}
    let b = st_binomial_part(&i, &[2], &s, &t).unwrap();
    println!("Bin_s,t generators:");
    for g in b.groebner_basis(&TermOrder::DegRevLex).iter() {
        println!("  {g}");
    }
    let probe = x.pow(3).mul(&z.pow(6)).sub(&y.pow(3));
    println!("x^3 z^6 - y^3 in Bin_s,t: {}", b.contains(&probe));
}
