use std::time::Instant;
fn main() {
    let l = rrgroup::catalog::catalog_lookup("L").unwrap();
    l.order().unwrap();
    let t0 = Instant::now();
    let inv = rrgroup::analysis::inventory(&l, 3_000_000).unwrap();
    println!(
        "L inventory: {} reflections, {} rotations, orders {:?} in {:?}",
        inv.reflections.len(), inv.rotations.len(), inv.rotation_orders, t0.elapsed()
    );
    let t0 = Instant::now();
    let ok = rrgroup::analysis::generated_by_rotations(&l, &inv).unwrap();
    println!("L generated by rotations: {ok} in {:?}", t0.elapsed());
}
