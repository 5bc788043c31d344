use rrgroup::assembly::{assembly_from_parts, CatalogTriple};
use rrgroup::catalog::catalog_lookup;
use rrgroup::matgroup::MatrixGroup;

fn triple(g: &str, h: Option<&str>, f: Option<&str>, case: Option<&str>) -> CatalogTriple {
    let g = catalog_lookup(g).unwrap();
    let h = match h { Some(s) => catalog_lookup(s).unwrap(), None => MatrixGroup::trivial(g.dim) };
    let f = match f { Some(s) => catalog_lookup(s).unwrap(), None => MatrixGroup::trivial(g.dim) };
    CatalogTriple { g, h, f, case_tag: case.map(|s| s.to_string()) }
}

fn main() {
    let w_a2 = catalog_lookup("W(A2)").unwrap();
    let data = assembly_from_parts(
        vec![
            triple("W(A2)", None, Some("W(A2)"), Some("(iv)")),
            triple("W(A2)", None, Some("W(A2)"), Some("(iv)")),
        ],
        vec![vec![(0, 0), (1, 0)]],
        vec![(((0, 0), (1, 0)), w_a2.generators.clone())],
    )
    .unwrap();
    println!("built data, dim {}", data.dim);
    let f1 = &data.triples[1].f;
    println!("F1 dim {} order {}", f1.dim, f1.order().unwrap());
    for (i, img) in data.isos[0].images.iter().enumerate() {
        println!("image {i}: fixed_dim {} (want {})", img.fixed_dim(), data.dim - 1);
        println!("  in F1: {:?}", f1.contains(img));
    }
    match data.assemble() {
        Ok(g) => println!("assembled order {}", g.order().unwrap()),
        Err(e) => println!("assemble error: {e}"),
    }
}
