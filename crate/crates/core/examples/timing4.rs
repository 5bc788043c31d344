use std::time::Instant;
fn main() {
    let l = rrgroup::catalog::catalog_lookup("L").unwrap();
    l.order().unwrap();
    let t0 = Instant::now();
    let (ok, fails) = rrgroup::analysis::isotropy_rotation_check(&l, 3_000_000).unwrap();
    println!("L isotropy: {ok} ({} failures) in {:?}", fails.len(), t0.elapsed());
}
