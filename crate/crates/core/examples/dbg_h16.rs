use binpart::arith::{Field, UniPoly};

fn main() {
    let q = Field::rationals();
    // K = Q[z]/(z^6 - z^2 + 1), h = z^4 + z^2
    let m = UniPoly::from_ints(&q, &[1, 0, -1, 0, 0, 0, 1]);
    let k = Field::extension_unchecked(q.clone(), "z", m);
    let z = k.ext_generator();
    let h = z.pow_i64(4).add(&z.pow_i64(2));
    for e in [2i64, 4, 8, 16, 32, 48] {
        println!("h^{e} = {}", h.pow_i64(e));
    }
    println!("z^6 * h = {}", z.pow_i64(6).mul(&h));
    // and -h
    let nh = h.neg();
    println!("(-h)^16 = {}", nh.pow_i64(16));
}
