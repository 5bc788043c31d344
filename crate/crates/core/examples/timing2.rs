use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let l = rrgroup::catalog::catalog_lookup("L").unwrap();
    l.order().unwrap();
    println!("L built in {:?}", t0.elapsed());

    // M8 generator membership in L
    let t0 = Instant::now();
    let m8 = rrgroup::catalog::catalog_lookup("M8").unwrap();
    let mut ok = true;
    for g in &m8.generators {
        ok &= l.contains(g).unwrap();
    }
    println!("M8 gens in L: {ok} in {:?}", t0.elapsed());

    // W(R1), W(R2) membership of L's generators
    let t0 = Instant::now();
    let wr1 = rrgroup::catalog::catalog_lookup("WR1").unwrap();
    println!("W(R1) order {} in {:?}", wr1.order().unwrap(), t0.elapsed());
    let t0 = Instant::now();
    let wr2 = rrgroup::catalog::catalog_lookup("WR2").unwrap();
    println!("W(R2) order {} in {:?}", wr2.order().unwrap(), t0.elapsed());
    let t0 = Instant::now();
    let mut ok = true;
    for g in &l.generators {
        ok &= wr1.contains(g).unwrap() && wr2.contains(g).unwrap();
    }
    println!("L gens in W(R1) and W(R2): {ok} in {:?}", t0.elapsed());

    // L inventory: 420 rotations all order 2 (full enumeration of 2.58M)
    let t0 = Instant::now();
    let inv = rrgroup::analysis::inventory(&l, 3_000_000).unwrap();
    println!(
        "L inventory: {} reflections, {} rotations, orders {:?} in {:?}",
        inv.reflections.len(),
        inv.rotations.len(),
        inv.rotation_orders,
        t0.elapsed()
    );
}
