//! The table-verification suite: every check pins a group order or a
//! structural count of the catalog to its known value and recomputes it
//! from scratch through the engine.
//!
//! The fast tier finishes in well under two minutes; the full tier adds the
//! two expensive computations (the order of W+(E8) and the complete rotation
//! inventory of L) plus the E8 root-system cross-checks.

use crate::analysis;
use crate::catalog::{self, exceptional};
use crate::error::Result;
use crate::matgroup::MatrixGroup;
use crate::witt::WittSpace;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub millis: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Full,
}

pub struct Suite {
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// A deferred check: name, expected value, and the computation producing the
/// observed value. Definitions are independent, so callers may run them in
/// parallel.
pub struct CheckDef {
    pub name: String,
    pub expected: String,
    pub run: Box<dyn Fn() -> Result<String> + Send + Sync>,
}

impl CheckDef {
    pub fn execute(&self) -> Check {
        let start = Instant::now();
        let (computed, pass) = match (self.run)() {
            Ok(v) => {
                let pass = v == self.expected;
                (v, pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        Check {
            name: self.name.clone(),
            expected: self.expected.clone(),
            computed,
            pass,
            millis: start.elapsed().as_millis(),
        }
    }
}

fn run_check(
    checks: &mut Vec<CheckDef>,
    name: &str,
    expected: impl ToString,
    f: impl Fn() -> Result<String> + Send + Sync + 'static,
) {
    checks.push(CheckDef {
        name: name.to_string(),
        expected: expected.to_string(),
        run: Box::new(f),
    });
}

fn order_check(checks: &mut Vec<CheckDef>, spec: &str, expected: u128) {
    let spec = spec.to_string();
    let name = format!("order {spec}");
    checks.push(CheckDef {
        name,
        expected: expected.to_string(),
        run: Box::new(move || {
            let g = catalog::catalog_lookup(&spec)?;
            Ok(g.order()?.to_string())
        }),
    });
}

pub fn verify_tables(tier: Tier) -> Suite {
    Suite { checks: check_definitions(tier).iter().map(|d| d.execute()).collect() }
}

/// Every check of the suite as an independent definition.
pub fn check_definitions(tier: Tier) -> Vec<CheckDef> {
    let mut checks = Vec::new();
    let c = &mut checks;

    // primitive absolutely irreducible rotation groups
    order_check(c, "W+(A2)", 3);
    order_check(c, "W+(A3)", 12);
    order_check(c, "W+(A4)", 60);
    order_check(c, "W+(H3)", 60);
    order_check(c, "SO4(D3/D3;T/T)", 144);
    order_check(c, "SO4(D6/D6;T/T)", 288);
    order_check(c, "SO4(D1/D1;O/O)", 96);
    order_check(c, "SO4(D2/D2;O/O)", 192);
    order_check(c, "SO4(D3/C2;O/V)", 48);
    order_check(c, "SO4(D6/C4;O/V)", 96);
    order_check(c, "SO4(D1/C2;O/T)", 48);
    order_check(c, "SO4(D2/C4;O/T)", 96);
    order_check(c, "SO4(D2/D1;O/T)", 96);
    order_check(c, "SO4(D4/D2;O/T)", 192);
    order_check(c, "SO4(D2/D2;I/I)", 480);
    order_check(c, "SO4(D3/D3;I/I)", 720);
    order_check(c, "SO4(T/T;O/O)", 576);
    order_check(c, "SO4(T/T;I/I)", 1440);
    order_check(c, "SO4(O/O;I/I)", 2880);
    order_check(c, "SO4(I/C1;I/C1:galois2)", 60);
    order_check(c, "SO4(I/C2;I/C2:galois2)", 120);
    order_check(c, "W*(A4)", 120);
    order_check(c, "W*(D4)", 288);
    order_check(c, "SO4(T/T;T/T)", 288);
    order_check(c, "W+(F4)", 576);
    order_check(c, "SO4(O/T;O/T)", 576);
    order_check(c, "W*(F4)", 1152);
    order_check(c, "SO4(O/O;O/O)", 1152);
    order_check(c, "W+(H4)", 7200);
    order_check(c, "SO4(I/I;I/I)", 7200);
    order_check(c, "R5(A5)", 60);
    order_check(c, "W*(A5)", 720);
    order_check(c, "R6(PSL27)", 168);
    order_check(c, "W+(E6)", 25920);
    order_check(c, "W*(E6)", 51840);
    order_check(c, "W+(E7)", 1451520);
    order_check(c, "L", 2580480);

    // the starred SO(4) rows describe absolutely irreducible groups: the
    // galois twist of (I/C1;I/C1) has scalar commutant
    run_check(c, "commutant dim SO4(I/C1;I/C1:galois2)", 1usize, || {
        let g = catalog::catalog_lookup("SO4(I/C1;I/C1:galois2)")?;
        Ok(analysis::commutant_dimension(&g).to_string())
    });

    // imprimitive rotation groups
    order_check(c, "M5", 160);
    order_check(c, "M6", 1920);
    order_check(c, "M7p", 1344);
    order_check(c, "M7", 10752);
    order_check(c, "M8p", 21504);
    order_check(c, "M8", 172032);
    order_check(c, "W+(BC3)", 24);
    order_check(c, "W+(BC4)", 192);
    order_check(c, "W+(BC5)", 1920);
    order_check(c, "W+(D4)", 96);
    order_check(c, "W+(D5)", 960);
    order_check(c, "G*(3,1,3)", 648);
    order_check(c, "G*(4,2,3)", 768);
    order_check(c, "G*(6,1,2)", 144);
    order_check(c, "G*(6,2,4)", 124416);

    // irreducible reflection-rotation groups containing a reflection
    order_check(c, "W~(A4)", 240);
    order_check(c, "W~(D4)", 576);
    order_check(c, "W~(F4)", 2304);
    order_check(c, "M~5", 320);
    order_check(c, "W~(A5)", 1440);
    order_check(c, "M~6", 3840);
    order_check(c, "W~(E6)", 103680);
    order_check(c, "M~7", 21504);
    order_check(c, "M~8", 344064);
    order_check(c, "M~D(3)", 24);
    order_check(c, "M~D(4)", 192);
    order_check(c, "G~(3,1,2)", 72);
    order_check(c, "G~(4,2,3)", 1536);
    order_check(c, "G~(6,2,2)", 144);
    order_check(c, "G~(6,1,3)", 10368);

    // base family G(m,p,n)
    order_check(c, "G(4,2,3)", 192);
    order_check(c, "G(3,1,2)", 18);
    order_check(c, "G(2,2,2)", 4);

    // weight-space structure of the tensor group
    run_check(c, "Htensor order", 128u128, || {
        Ok(exceptional::h_tensor()?.order()?.to_string())
    });
    run_check(c, "one-dim singular subspaces", 35usize, || {
        let w = WittSpace::build(&exceptional::h_tensor()?)?;
        Ok(w.singular_count(1).to_string())
    });
    run_check(c, "maximal singular subspaces", 30usize, || {
        let w = WittSpace::build(&exceptional::h_tensor()?)?;
        Ok(w.singular_count(3).to_string())
    });
    run_check(c, "witt index", 3usize, || {
        let w = WittSpace::build(&exceptional::h_tensor()?)?;
        Ok(w.witt_index().to_string())
    });
    run_check(c, "K2 weight planes", 420usize, || {
        let w = WittSpace::build(&exceptional::h_tensor()?)?;
        Ok(w.weight_collection(2).len().to_string())
    });
    run_check(c, "|R1|", 240usize, || Ok(exceptional::roots_r1().len().to_string()));
    run_check(c, "|R2|", 240usize, || Ok(exceptional::roots_r2().len().to_string()));

    if tier == Tier::Full {
        order_check(c, "W+(E8)", 348364800);
        order_check(c, "WR1", 696729600);
        order_check(c, "WR2", 696729600);
        run_check(c, "L generators in W(R1) and W(R2)", true, || {
            let l = catalog::catalog_lookup("L")?;
            let wr1 = catalog::catalog_lookup("WR1")?;
            let wr2 = catalog::catalog_lookup("WR2")?;
            let mut ok = true;
            for g in &l.generators {
                ok = ok && wr1.contains(g)? && wr2.contains(g)?;
            }
            Ok(ok.to_string())
        });
        run_check(c, "M8 generators in L", true, || {
            let l = catalog::catalog_lookup("L")?;
            let m8 = catalog::catalog_lookup("M8")?;
            let mut ok = true;
            for g in &m8.generators {
                ok = ok && l.contains(g)?;
            }
            Ok(ok.to_string())
        });
        run_check(c, "L rotation count", 420usize, || {
            let l = catalog::catalog_lookup("L")?;
            let inv = analysis::inventory(&l, 3_000_000)?;
            Ok(inv.rotations.len().to_string())
        });
        run_check(c, "L isotropy rotation check", true, || {
            let l = catalog::catalog_lookup("L")?;
            let (ok, _) = analysis::isotropy_rotation_check(&l, 3_000_000)?;
            Ok(ok.to_string())
        });
        for spec in ["R6(PSL27)", "M7p", "M8p"] {
            let spec = spec.to_string();
            c.push(CheckDef {
                name: format!("isotropy rotation check {spec}"),
                expected: "true".into(),
                run: Box::new(move || {
                    let g = catalog::catalog_lookup(&spec)?;
                    let (ok, _) = analysis::isotropy_rotation_check(&g, 200_000)?;
                    Ok(ok.to_string())
                }),
            });
        }
    }

    checks
}

/// The engines behind `info`: a one-group analysis run.
pub fn group_info(g: &MatrixGroup) -> Result<analysis::AnalysisReport> {
    analysis::analyze(g)
}
