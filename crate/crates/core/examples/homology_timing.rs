use std::time::Instant;

use pperfect::group::{groups_up_to_order_8, symmetric, FiniteGroup};
use pperfect::homology::HomologyBasis;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let top: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let mut groups: Vec<(String, FiniteGroup)> = groups_up_to_order_8();
    groups.push(("S4".into(), symmetric(4)));
    for (name, g) in groups {
        let t = Instant::now();
        match HomologyBasis::compute(&g, p, top) {
            Ok(h) => println!("{name:>9} |G|={:>2} dims {:?} in {:?}", g.size(), h.dims(), t.elapsed()),
            Err(e) => println!("{name:>9} |G|={:>2} {e}", g.size()),
        }
    }
}
