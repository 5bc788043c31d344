use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let h4 = rrgroup::catalog::catalog_lookup("W(H4)").unwrap();
    println!("W(H4) order {} in {:?}", h4.order().unwrap(), t0.elapsed());

    let t0 = Instant::now();
    let g = rrgroup::catalog::catalog_lookup("L").unwrap();
    println!("L order {} in {:?}", g.order().unwrap(), t0.elapsed());

    let t0 = Instant::now();
    let e8 = rrgroup::catalog::catalog_lookup("W+(E8)").unwrap();
    println!("built W+(E8) gens in {:?}", t0.elapsed());
    let t0 = Instant::now();
    println!("W+(E8) order {} in {:?}", e8.order().unwrap(), t0.elapsed());

    let t0 = Instant::now();
    let so4 = rrgroup::catalog::catalog_lookup("SO4(O/O;I/I)").unwrap();
    println!("SO4(O/O;I/I) order {} in {:?}", so4.order().unwrap(), t0.elapsed());
}
