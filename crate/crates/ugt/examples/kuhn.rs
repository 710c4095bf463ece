//! Converts between mixed and behavior strategies and compares reach
//! probabilities at every copy.
//!
//! `cargo run --example kuhn`

use ugt::fixtures::by_name;
use ugt::strategy::{kuhn_convert, reach_probability, Behavior, Converted, Ctx, Strat};

fn main() {
    let g = by_name("bos_repeated").expect("fixture");
    let ctx = Ctx::new(&g);
    let b = Behavior::uniform(&ctx, 1);
    let Converted::Mixed(m) = kuhn_convert(&ctx, 1, Strat::Behavior(&b)) else { unreachable!() };
    println!("uniform kernels of player 1 spread over {} plans", m.support().count());
    let others: Vec<_> = ctx.all_plans().into_iter().map(|l| l[0].clone()).collect();
    let mut equal = 0;
    for l in g.locs() {
        let x = reach_probability(&ctx, 1, Strat::Behavior(&b), &others, l);
        let y = reach_probability(&ctx, 1, Strat::Mixed(&m), &others, l);
        assert_eq!(x, y, "{}", g.loc_name(l));
        equal += 1;
    }
    println!("{equal} copies reached with equal probability");
    let Converted::Behavior(back) = kuhn_convert(&ctx, 1, Strat::Mixed(&m)) else { unreachable!() };
    println!("round trip returns the kernels: {}", back == b);
}
